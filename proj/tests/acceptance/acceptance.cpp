// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N[,N...]] [--known-red N[,N...]] [--ablation-pop P]
//
// Exit status is 0 when the failing criteria are exactly the known-red set.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "uavdc/archive.hpp"
#include "uavdc/harness.hpp"
#include "uavdc/imoaha_ops.hpp"
#include "uavdc/metrics.hpp"
#include "uavdc/scenario_model.hpp"
#include "uavdc/solution_space.hpp"

using namespace uavdc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string sci(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
    return out;
}

// ---------------------------------------------------------------- 1
Outcome energy_model() {
    const UavPowerParams up;
    const double p0 = propulsion_power(0.0, up);
    // Straight-line re-evaluation at 10 m/s.
    const double v = 10.0;
    const double blade = 79.8563 * (1.0 + 3.0 * v * v / (120.0 * 120.0));
    const double induced = 96.6850 * std::sqrt(std::sqrt(1.0 + std::pow(v, 4) / (4.0 * std::pow(4.03, 4))) -
                                               v * v / (2.0 * 4.03 * 4.03));
    const double parasite = 0.5 * 0.6 * 1.225 * 0.05 * 0.503 * v * v * v;
    const double p10_ref = blade + induced + parasite;
    const double p10 = propulsion_power(v, up);
    const double e0 = rel_err(p0, 176.5413), e10 = rel_err(p10, p10_ref);
    return {e0 < 1e-9 && e10 < 1e-9, "P(0)=" + sci(p0) + " rel err " + sci(e0) + "; P(10)=" + sci(p10) + " rel err " +
                                         sci(e10) + " (limit 1e-9)"};
}

// ---------------------------------------------------------------- 2
Outcome model_chain() {
    // tests/oracle/model_chain.py, "chain" line.
    constexpr double kRate = 66577925.307805926, kEnergy = 0.0015019993419391744, kHover = 2.6516491642508635;
    Scenario s;
    s.area = {0, 200, 0, 200};
    s.num_hovers = 1;
    s.devices = {Device{0, {100, 100}, 1e6}};
    s.start_pos = s.end_pos = {100, 100};
    s.partition = partition_devices(s, 1);
    const SolutionVector x{{100}, {100}, {0}, {15}, {0.1}};
    const EvaluationDetail d = evaluate_detailed(s, x);
    const double r = -d.objectives.neg_min_rate, e = d.objectives.device_energy_j, h = d.objectives.uav_energy_j;
    const double er = rel_err(r, kRate), ee = rel_err(e, kEnergy), eh = rel_err(h, kHover);
    const bool pass = d.feasible && er < 1e-6 && ee < 1e-6 && eh < 1e-6;
    return {pass, "R=" + sci(r) + " bps, E_device=" + sci(e) + " J, hover=" + sci(h) + " J; rel errs " + sci(er) +
                      " " + sci(ee) + " " + sci(eh) + " (limit 1e-6)"};
}

// ---------------------------------------------------------------- 3
Outcome archive_properties() {
    Rng rng(31337);
    std::size_t nds_checked = 0, removals = 0, violations = 0;
    auto entry = [](const ObjectiveVector& f) {
        ArchiveEntry e;
        e.objectives = f;
        return e;
    };
    for (int seq = 0; seq < 10000; ++seq) {
        Archive a;
        a.capacity = 1 + uniform_index(rng, 15);
        const bool coarse = seq % 3 == 0;
        const int steps = 1 + static_cast<int>(uniform_index(rng, 6));
        for (int st = 0; st < steps; ++st) {
            const auto pts = oracle::random_points(rng, 1 + uniform_index(rng, 50), coarse);
            if (nondominated_sort(pts).rank != oracle::brute_ranks(pts)) ++violations;
            ++nds_checked;
            std::vector<ArchiveEntry> cand;
            for (const auto& p : pts) cand.push_back(entry(p));

            // One removal in isolation: only the nearest neighbour's crowding may change.
            Archive wide;
            wide.capacity = std::numeric_limits<std::size_t>::max();
            wide = archive_update(a, cand);
            if (wide.size() >= 2) {
                Archive one = wide;
                one.capacity = wide.size() - 1;
                DecdTrace tr;
                const Archive after = decd_truncate(one, &tr);
                ++removals;
                if (tr.removed_positions.size() != 1 || tr.updated_positions.size() != 1) {
                    ++violations;
                } else {
                    const std::size_t rm = tr.removed_positions[0], up = tr.updated_positions[0];
                    std::size_t changed = 0;
                    for (std::size_t j = 0; j < after.size(); ++j) {
                        const double before = wide.entries[j < rm ? j : j + 1].crowding;
                        if (j != up && after.entries[j].crowding != before) ++violations;
                        if (after.entries[j].crowding != before) ++changed;
                    }
                    if (changed > 1) ++violations;
                    const std::vector<ObjectiveVector> rest = after.objectives();
                    const double fresh = crowding_distance(rest)[up];
                    if (!(after.entries[up].crowding == fresh)) ++violations;
                }
            }

            a = archive_update(a, cand);
            if (a.size() > a.capacity) ++violations;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < a.size(); ++j)
                    if (i != j && (dominates(a.entries[i].objectives, a.entries[j].objectives) ||
                                   a.entries[i].objectives == a.entries[j].objectives))
                        ++violations;
        }
    }
    return {violations == 0, "10000 update sequences, " + std::to_string(nds_checked) + " sorts vs pairwise ranker, " +
                                 std::to_string(removals) + " isolated DECD removals, " + std::to_string(violations) +
                                 " violations"};
}

// ---------------------------------------------------------------- 4
Outcome tiny_oracle() {
    const Scenario scn = build_scenario(tiny_scenario_config());
    const GeneGrid grid = uniform_gene_grid(scenario_bounds(scn), 3);
    const OracleFront oracle_front = brute_force_front(scn, grid);

    std::vector<std::vector<ObjectiveVector>> fronts{oracle_front.objectives};
    std::vector<Archive> archives;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        AlgoConfig cfg;
        cfg.mode = Mode::imoaha;
        cfg.max_iters = 200;
        cfg.seed = seed;
        cfg.snap = grid;
        cfg.keep_snapshots = false;
        archives.push_back(run(scn, cfg).archive);
        fronts.push_back(archives.back().objectives());
    }
    const HypervolumeRef ref = reference_point(fronts);
    const double hv_oracle = hypervolume(oracle_front.objectives, ref);

    double worst_ratio = INFINITY, mean_ratio = 0.0, worst_excess = 0.0;
    std::size_t points = 0, dominated = 0;
    for (const auto& arch : archives) {
        const double ratio = hypervolume(arch.objectives(), ref) / hv_oracle;
        worst_ratio = std::min(worst_ratio, ratio);
        mean_ratio += ratio / static_cast<double>(archives.size());
        for (const auto& e : arch.entries) {
            const ObjectiveVector a = evaluate_objectives(scn, snap_to_grid(e.solution, grid));
            ++points;
            bool hit = false;
            for (const auto& o : oracle_front.objectives) {
                if (!oracle::dominates(o, a)) continue;
                hit = true;
                for (std::size_t j = 0; j < 3; ++j)
                    worst_excess = std::max(worst_excess, (a[j] - o[j]) / std::max(1.0, std::abs(o[j])));
            }
            dominated += hit;
        }
    }
    const bool pass = worst_ratio >= 0.95 && worst_excess <= 1e-9;
    return {pass, "oracle: " + std::to_string(oracle_front.enumerated) + " enumerated, front " +
                      std::to_string(oracle_front.objectives.size()) + "; HV ratio worst " + sci(worst_ratio) + " mean " +
                      sci(mean_ratio) + " (need >= 0.95); " + std::to_string(dominated) + " of " +
                      std::to_string(points) + " archive points dominated, worst relative excess " + sci(worst_excess) +
                      " (limit 1e-9)"};
}

// ---------------------------------------------------------------- 5
Outcome ablation(std::size_t pop) {
    ExperimentConfig cfg = default_config();
    for (auto& a : cfg.algorithms) a.config.pop_size = pop;
    const auto records = run_experiment(cfg);
    for (const auto& r : records)
        if (r.failed) return {false, r.algorithm + " run " + std::to_string(r.run) + " failed: " + r.error};
    const auto rep = compare(fronts_of(records, "IMOAHA"), fronts_of(records, "MOAHA"));
    const bool hv_mean = rep.hv_a.mean > rep.hv_b.mean;
    const bool two = rep.two_of_three_fraction_a >= 0.8;
    std::ostringstream os;
    os << "K=100 U=6 pop=" << pop << " iters=200, " << rep.rows.size() << " paired seeds; mean HV IMOAHA "
       << sci(rep.hv_a.mean) << " vs MOAHA " << sci(rep.hv_b.mean) << (hv_mean ? " (win)" : " (loss)")
       << "; >=2 of 3 objective bests won in " << sci(100 * rep.two_of_three_fraction_a) << "% of seeds (need 80%)"
       << "; per-objective win fractions f1 " << sci(rep.objective_win_fraction_a[0]) << " f2 "
       << sci(rep.objective_win_fraction_a[1]) << " f3 " << sci(rep.objective_win_fraction_a[2]);
    return {hv_mean && two, os.str()};
}

// ---------------------------------------------------------------- 6
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "uavdc_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path config = root / "ci.json";
    std::ofstream(config) << R"({"runs": 3, "master_seed": 4242,
        "algorithms": [{"name": "IMOAHA", "mode": "imoaha", "pop_size": 20, "max_iters": 50},
                       {"name": "MOAHA", "mode": "baseline_moaha", "pop_size": 20, "max_iters": 50}]})";
    std::vector<fs::path> outs{root / "a", root / "b", root / "c"};
    for (std::size_t i = 0; i < outs.size(); ++i) {
        std::string cmd = std::string("\"") + UAVDC_CLI_PATH + "\" run --config \"" + config.string() + "\" --out \"" +
                          outs[i].string() + "\"" + (i == 2 ? " --jobs 3 --isa scalar" : "") + " > \"" +
                          (root / "log.txt").string() + "\" 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed: " + slurp(root / "log.txt")};
    }
    std::size_t compared = 0;
    std::vector<std::string> differing;
    std::vector<fs::path> files{"summary.csv"};
    for (const auto& e : fs::directory_iterator(outs[0] / "archive")) files.push_back(fs::path("archive") / e.path().filename());
    for (const auto& f : files)
        for (std::size_t i = 1; i < outs.size(); ++i) {
            ++compared;
            if (!fs::exists(outs[i] / f) || slurp(outs[0] / f) != slurp(outs[i] / f))
                differing.push_back(f.string() + " (run " + std::to_string(i) + ")");
        }
    std::string detail = std::to_string(files.size()) + " files, " + std::to_string(compared) +
                         " byte comparisons across 3 CLI executions (third with --jobs 3 --isa scalar)";
    if (!differing.empty()) detail += "; differing: " + differing.front();
    fs::remove_all(root);
    return {differing.empty() && files.size() == 7, detail};
}

// ---------------------------------------------------------------- 7
Outcome operator_contracts() {
    Rng rng(777);
    std::size_t bad_perm = 0, bad_init = 0, bad_factor = 0;
    for (int t = 0; t < 100000; ++t) {
        const std::size_t u = 1 + uniform_index(rng, 20);
        std::vector<std::size_t> s(u);
        for (std::size_t i = 0; i < u; ++i) s[i] = (i * 7 + 3) % u == i ? i : i;
        for (std::size_t i = u; i > 1; --i) std::swap(s[i - 1], s[uniform_index(rng, i)]);
        auto m = discrete_mutation(s, rng);
        std::vector<bool> seen(u, false);
        for (std::size_t v : m) {
            if (v >= u || seen[v]) ++bad_perm;
            else seen[v] = true;
        }
        if (m.size() != u) ++bad_perm;
    }
    for (int t = 0; t < 10000; ++t) {
        const double lo = uniform(rng, -100, 100);
        const Bounds b{{lo, lo + uniform(rng, 1, 1000)}, {0, uniform(rng, 1, 1000)}, {10, 20}, {0.1, 10}};
        ChaoticChain chain{TentParams{}};
        const std::size_t u = 1 + uniform_index(rng, 10);
        for (int bird = 0; bird < 5; ++bird) {
            const auto x = hybrid_init(b, u, 1 + uniform_index(rng, 30), chain, rng);
            if (!is_valid(x, b)) ++bad_init;
            for (std::size_t i = 0; i < u; ++i)
                if (x.visit_seq[i] != i) ++bad_init;
        }
    }
    double fmin = INFINITY, fmax = -INFINITY;
    for (int t = 0; t < 100000; ++t) {
        const double f = cauchy_factor(rng);
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
        if (!(f > 1.0 / (2.0 * std::numbers::pi) && f <= 1.0 / std::numbers::pi)) ++bad_factor;
    }
    return {bad_perm == 0 && bad_init == 0 && bad_factor == 0,
            "1e5 mutations: " + std::to_string(bad_perm) + " broken permutations; 5e4 hybrid inits: " +
                std::to_string(bad_init) + " violations; 1e5 Cauchy factors in [" + sci(fmin) + ", " + sci(fmax) +
                "]: " + std::to_string(bad_factor) + " outside (1/(2pi), 1/pi]"};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only, known_red;
    std::size_t ablation_pop = 50;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) only = parse_list(argv[++i]);
        else if (arg == "--known-red" && i + 1 < argc) known_red = parse_list(argv[++i]);
        else if (arg == "--ablation-pop" && i + 1 < argc) ablation_pop = std::stoul(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--only N,...] [--known-red N,...] [--ablation-pop P]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"energy-model exactness", energy_model},
        {"model-chain oracle", model_chain},
        {"archive invariants", archive_properties},
        {"tiny-instance oracle equivalence", tiny_oracle},
        {"ablation direction", [&] { return ablation(ablation_pop); }},
        {"determinism", determinism},
        {"operator contracts", operator_contracts},
    };

    std::set<int> failed;
    for (std::size_t c = 0; c < criteria.size(); ++c) {
        const int id = static_cast<int>(c + 1);
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[c].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) failed.insert(id);
        std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[c].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }

    int status = 0;
    for (int id : failed)
        if (!known_red.count(id)) status = 1;
    for (int id : known_red) {
        if (!only.empty() && !only.count(id)) continue;
        if (!failed.count(id)) {
            std::printf("NOTE criterion %d is listed as known red but passed\n", id);
            status = 1;
        } else {
            std::printf("NOTE criterion %d is a known failure, documented in README.md\n", id);
        }
    }
    std::printf("%zu of %zu criteria failed\n", failed.size(), only.empty() ? criteria.size() : only.size());
    return status;
}
