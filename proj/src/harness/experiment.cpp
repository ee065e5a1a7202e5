#include <atomic>
#include <chrono>
#include <thread>

#include "uavdc/harness.hpp"
#include "uavdc/metrics.hpp"
#include "uavdc/rng.hpp"
#include "uavdc/solution_space.hpp"

namespace uavdc {

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run) { return split_seed(master_seed, run); }

namespace {

RunRecord execute(const Scenario& scn, const ExperimentConfig& cfg, const NamedAlgo& algo, std::size_t run,
                  const std::string& hash) {
    RunRecord rec;
    rec.algorithm = algo.name;
    rec.run = run;
    rec.seed = run_seed(cfg.master_seed, run);
    rec.config_hash = hash;
    AlgoConfig ac = algo.config;
    ac.seed = rec.seed;
    if (cfg.snap_grid_points > 0) ac.snap = uniform_gene_grid(scenario_bounds(scn), cfg.snap_grid_points);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        RunResult res = uavdc::run(scn, ac);
        rec.archive = std::move(res.archive);
        rec.snapshots = std::move(res.snapshots);
        rec.stats = res.stats;
        rec.timings = res.timings;
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, std::size_t jobs) {
    validate_experiment(cfg);
    const Scenario scn = build_scenario(cfg.scenario);
    const std::string hash = config_hash(cfg);
    const std::size_t total = cfg.algorithms.size() * cfg.runs;
    std::vector<RunRecord> records(total);
    auto job = [&](std::size_t k) {
        records[k] = execute(scn, cfg, cfg.algorithms[k / cfg.runs], k % cfg.runs, hash);
    };
    if (jobs <= 1 || total <= 1) {
        for (std::size_t k = 0; k < total; ++k) job(k);
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(jobs, total); ++t)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < total; k = next++) job(k);
        });
    for (auto& th : pool) th.join();
    return records;
}

std::size_t representative_index(const RunRecord& rec) {
    const auto objs = rec.archive.objectives();
    return knee_point_index(objs);
}

}  // namespace uavdc
