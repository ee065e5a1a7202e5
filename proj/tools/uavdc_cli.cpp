// uavdc: run, compare and check UAV data-collection trajectory experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "uavdc/harness.hpp"
#include "uavdc/kernels.hpp"
#include "uavdc/metrics.hpp"
#include "uavdc/solution_space.hpp"

namespace {

using namespace uavdc;

ExperimentConfig config_or_default(const std::string& path) {
    return path.empty() ? default_config() : load_config(path);
}

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out,
            std::optional<std::size_t> runs, std::optional<std::size_t> pop, std::optional<std::size_t> iters,
            std::size_t jobs) {
    ExperimentConfig cfg = config_or_default(config);
    if (seed) cfg.master_seed = *seed;
    if (runs) cfg.runs = *runs;
    for (auto& a : cfg.algorithms) {
        if (pop) a.config.pop_size = *pop;
        if (iters) a.config.max_iters = *iters;
    }
    if (!out.empty()) cfg.output_dir = out;
    validate_experiment(cfg);
    const Scenario scn = build_scenario(cfg.scenario);
    std::cerr << "running " << cfg.algorithms.size() << " algorithm(s) x " << cfg.runs << " run(s), K="
              << scn.devices.size() << " U=" << scn.num_hovers << ", kernels " << kernels::isa_name(kernels::active_isa())
              << "\n";
    const auto records = run_experiment(cfg, jobs);
    export_results(records, cfg, scn, cfg.output_dir);
    std::size_t failed = 0;
    for (const auto& r : records) {
        if (r.failed) {
            ++failed;
            std::cerr << r.algorithm << " run " << r.run << " failed: " << r.error << "\n";
        }
    }
    std::cout << "wrote " << records.size() << " run record(s) to " << cfg.output_dir << "\n";
    return failed ? 1 : 0;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b, const std::string& alg_a, const std::string& alg_b,
                const std::string& out) {
    const auto fa = load_fronts(dir_a, alg_a);
    const auto fb = load_fronts(dir_b, alg_b);
    const ComparisonReport rep = compare(fa, fb);
    std::cout << format_report(rep);
    if (!out.empty()) write_report_csv(rep, out);
    return 0;
}

int cmd_oracle(const std::string& config, std::size_t grid_points, std::size_t cap, const std::string& out) {
    ScenarioConfig sc = config.empty() ? tiny_scenario_config() : load_config(config).scenario;
    const Scenario scn = build_scenario(sc);
    const GeneGrid grid = uniform_gene_grid(scenario_bounds(scn), grid_points);
    const std::size_t n = enumeration_size(scn, grid);
    std::cerr << "enumerating " << n << " solutions (K=" << scn.devices.size() << " U=" << scn.num_hovers << ", "
              << grid_points << " points per gene)\n";
    const OracleFront front = brute_force_front(scn, grid, cap);
    std::vector<std::vector<ObjectiveVector>> one{front.objectives};
    const HypervolumeRef ref = reference_point(one);
    std::cout << "enumerated " << front.enumerated << ", front size " << front.objectives.size() << ", hypervolume "
              << format_number(hypervolume(front.objectives, ref)) << "\n";
    std::ostringstream os;
    os << "index,f1_bps,f2_J,f3_J,visit_seq\n";
    for (std::size_t i = 0; i < front.objectives.size(); ++i) {
        const auto& o = front.objectives[i];
        os << i << "," << format_number(-o.neg_min_rate) << "," << format_number(o.device_energy_j) << ","
           << format_number(o.uav_energy_j) << ",";
        for (std::size_t v = 0; v < front.solutions[i].visit_seq.size(); ++v)
            os << (v ? " " : "") << front.solutions[i].visit_seq[v];
        os << "\n";
    }
    if (out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << os.str();
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    const ExperimentConfig cfg = load_config(path);
    std::cout << resolved_config_json(cfg) << "\n";
    std::cerr << "ok, config hash " << config_hash(cfg) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV data-collection trajectory optimization (IMOAHA / MOAHA)"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string isa = "auto";
    app.add_option("--isa", isa, "kernel variant: auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto* run = app.add_subcommand("run", "run a seeded multi-run experiment and export results");
    std::string run_config, run_out;
    std::optional<std::uint64_t> run_seed_opt;
    std::optional<std::size_t> run_runs, run_pop, run_iters;
    std::size_t run_jobs = 1;
    run->add_option("-c,--config", run_config, "configuration file (JSON); omitted: built-in defaults");
    run->add_option("-s,--seed", run_seed_opt, "override master_seed");
    run->add_option("-o,--out", run_out, "override output_dir");
    run->add_option("--runs", run_runs, "override runs");
    run->add_option("--pop", run_pop, "override pop_size of every algorithm");
    run->add_option("--iters", run_iters, "override max_iters of every algorithm");
    run->add_option("-j,--jobs", run_jobs, "independent runs executed concurrently")->check(CLI::PositiveNumber);

    auto* cmp = app.add_subcommand("compare", "paired comparison of two result directories");
    std::string dir_a, dir_b, alg_a, alg_b, cmp_out;
    cmp->add_option("DIR_A", dir_a, "results directory of algorithm A")->required();
    cmp->add_option("DIR_B", dir_b, "results directory of algorithm B")->required();
    cmp->add_option("--alg-a", alg_a, "algorithm name inside DIR_A");
    cmp->add_option("--alg-b", alg_b, "algorithm name inside DIR_B");
    cmp->add_option("-o,--out", cmp_out, "write per-run deltas as CSV");

    auto* orc = app.add_subcommand("oracle", "exhaustive Pareto front of a tiny discretized instance");
    std::string orc_config, orc_out;
    std::size_t orc_grid = 3, orc_cap = 10'000'000;
    orc->add_option("-c,--config", orc_config, "configuration file; omitted: built-in U=2, K=4 instance");
    orc->add_option("-g,--grid", orc_grid, "grid points per continuous gene")->check(CLI::Range(1, 1000));
    orc->add_option("--cap", orc_cap, "refuse enumerations larger than this");
    orc->add_option("-o,--out", orc_out, "write the front as CSV instead of stdout");

    auto* val = app.add_subcommand("validate-config", "check a configuration file and print it resolved");
    std::string val_path;
    val->add_option("PATH", val_path, "configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        kernels::set_isa(*kernels::parse_isa(isa));
        if (*run) return cmd_run(run_config, run_seed_opt, run_out, run_runs, run_pop, run_iters, run_jobs);
        if (*cmp) return cmd_compare(dir_a, dir_b, alg_a, alg_b, cmp_out);
        if (*orc) return cmd_oracle(orc_config, orc_grid, orc_cap, orc_out);
        if (*val) return cmd_validate(val_path);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
