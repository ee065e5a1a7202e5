#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "uavdc/harness.hpp"
#include "uavdc/metrics.hpp"
#include "uavdc/moaha_engine.hpp"
#include "uavdc/scenario_model.hpp"

using namespace uavdc;

namespace {

Scenario small_scenario(std::size_t k = 12, std::size_t u = 4) {
    ScenarioConfig sc;
    sc.num_devices = k;
    sc.num_hovers = u;
    sc.placement_seed = 3;
    return build_scenario(sc);
}

AlgoConfig small_config(Mode mode, std::uint64_t seed = 1) {
    AlgoConfig c;
    c.mode = mode;
    c.pop_size = 12;
    c.max_iters = 40;
    c.seed = seed;
    return c;
}

bool on_grid(const std::vector<double>& vals, const std::vector<double>& grid) {
    return std::all_of(vals.begin(), vals.end(),
                       [&](double v) { return std::find(grid.begin(), grid.end(), v) != grid.end(); });
}

}  // namespace

TEST_CASE("visit table bookkeeping") {
    VisitTable vt(3);
    CHECK(vt.at(0, 0) == 0);
    CHECK(vt.at(0, 1) == 1);
    vt.record_guided(0, 2);
    CHECK(vt.at(0, 1) == 2);
    CHECK(vt.at(0, 2) == 0);
    vt.record_territorial(1);
    CHECK(vt.at(1, 0) == 2);
    CHECK(vt.at(1, 2) == 2);
    vt.refill(0);
    CHECK(vt.at(1, 0) == 3);  // row 1 max + 1
    CHECK(vt.at(2, 0) == 2);
    const std::vector<std::size_t> ranks{1, 2, 1};
    CHECK(vt.select_target(0, ranks) == 1);
    CHECK(vt.select_target(2, ranks) == 0);
    VisitTable tie(3);
    CHECK(tie.select_target(1, std::vector<std::size_t>{2, 1, 1}) == 2);
    CHECK(tie.select_target(1, std::vector<std::size_t>{1, 1, 1}) == 0);
}

TEST_CASE("flight masks") {
    Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        const std::size_t dim = 1 + uniform_index(rng, 30);
        auto count = [](const std::vector<double>& m) { return std::count(m.begin(), m.end(), 1.0); };
        CHECK(count(flight_mask(FlightSkill::axial, dim, rng)) == 1);
        CHECK(count(flight_mask(FlightSkill::omnidirectional, dim, rng)) == static_cast<long>(dim));
        const auto d = count(flight_mask(FlightSkill::diagonal, dim, rng));
        if (dim <= 2) {
            CHECK(d == 1);
        } else {
            CHECK(d >= 2);
            CHECK(d <= static_cast<long>(dim) - 1);
        }
    }
}

TEST_CASE("foraging updates") {
    const std::vector<double> x{1, 2, 3}, t{10, 20, 30}, m{1, 0, 1};
    CHECK(guided_update(x, t, 0.5, m) == std::vector<double>{5.5, 20, 16.5});
    CHECK(territorial_update(x, 0.5, m) == std::vector<double>{1.5, 2, 4.5});
    CHECK_THROWS(guided_update(x, std::vector<double>{1}, 0.5, m));
}

TEST_CASE("lead and worst bird") {
    const std::vector<ObjectiveVector> objs{{3, 3, 3}, {0, 2, 1}, {1, 1, 1}, {2, 0, 1}, {4, 4, 4}};
    const FrontRank r = nondominated_sort(objs);
    CHECK(worst_bird(r.rank) == 4);
    CHECK(lead_bird(objs, r) == 1);  // boundary members tie at infinite crowding, lowest index wins
}

TEST_CASE("config validation") {
    AlgoConfig c;
    CHECK_NOTHROW(validate_config(c));
    c.pop_size = 1;
    CHECK_THROWS_WITH(validate_config(c), doctest::Contains("pop_size"));
    c = AlgoConfig{};
    c.guided_prob = 1.5;
    CHECK_THROWS_WITH(validate_config(c), doctest::Contains("guided_prob"));
    c = AlgoConfig{};
    c.tent.d = 0;
    CHECK_THROWS(validate_config(c));
    CHECK(AlgoConfig{}.effective_migration_period() == 100);
    CHECK(AlgoConfig{}.effective_archive_cap() == 50);
}

TEST_CASE("runs are reproducible and thread-count independent") {
    const Scenario s = small_scenario();
    for (Mode mode : {Mode::imoaha, Mode::baseline_moaha}) {
        AlgoConfig c = small_config(mode, 77);
        const RunResult a = run(s, c);
        const RunResult b = run(s, c);
        c.eval_threads = 3;
        const RunResult d = run(s, c);
        REQUIRE(a.archive.size() == b.archive.size());
        REQUIRE(a.archive.size() == d.archive.size());
        for (std::size_t i = 0; i < a.archive.size(); ++i) {
            CHECK(a.archive.entries[i].solution == b.archive.entries[i].solution);
            CHECK(a.archive.entries[i].objectives == d.archive.entries[i].objectives);
        }
        c.eval_threads = 1;
        c.seed = 78;
        const RunResult e = run(s, c);
        CHECK(e.archive.objectives() != a.archive.objectives());
    }
}

TEST_CASE("engine counters and invariants") {
    const Scenario s = small_scenario();
    const Bounds b = scenario_bounds(s);
    AlgoConfig c = small_config(Mode::imoaha, 5);
    c.max_iters = 100;
    const RunResult r = run(s, c);
    CHECK(r.stats.migrations == 100 / 24);
    CHECK(r.stats.worse_front_replacements == 0);
    CHECK(r.stats.guided + r.stats.territorial == 100 * 12);
    CHECK(r.stats.cauchy_invocations > 0);
    CHECK(r.stats.cauchy_invocations < r.stats.guided);
    CHECK(r.snapshots.size() == 100);
    CHECK(r.archive.size() <= c.effective_archive_cap());
    for (const auto& e : r.archive.entries) {
        CHECK(is_valid(e.solution, b));
        CHECK(evaluate_objectives(s, e.solution) == e.objectives);
    }
    AlgoConfig base = small_config(Mode::baseline_moaha, 5);
    CHECK(run(s, base).stats.cauchy_invocations == 0);
    base.migration_period = 7;
    base.max_iters = 30;
    CHECK(run(s, base).stats.migrations == 4);
}

TEST_CASE("hybrid init only in the improved mode") {
    const Scenario s = small_scenario();
    AlgoConfig im = small_config(Mode::imoaha);
    const EngineState a = initialize(s, im);
    for (const auto& h : a.population) CHECK(h.solution.visit_seq == std::vector<std::size_t>{0, 1, 2, 3});
    AlgoConfig base = small_config(Mode::baseline_moaha);
    const EngineState b = initialize(s, base);
    bool any_shuffled = false;
    for (const auto& h : b.population) any_shuffled |= h.solution.visit_seq != std::vector<std::size_t>{0, 1, 2, 3};
    CHECK(any_shuffled);
}

TEST_CASE("snapping keeps every gene on the grid") {
    const Scenario s = small_scenario(4, 2);
    AlgoConfig c = small_config(Mode::imoaha, 9);
    const GeneGrid g = uniform_gene_grid(scenario_bounds(s), 3);
    c.snap = g;
    const RunResult r = run(s, c);
    for (const auto& e : r.archive.entries) {
        CHECK(on_grid(e.solution.hover_x, g.hover_x));
        CHECK(on_grid(e.solution.hover_y, g.hover_y));
        CHECK(on_grid(e.solution.speeds, g.speed));
        CHECK(on_grid(e.solution.powers, g.power));
    }
}

TEST_CASE("untruncated archive hypervolume never decreases") {
    const Scenario s = small_scenario();
    AlgoConfig c = small_config(Mode::imoaha, 21);
    c.archive_cap = 100000;
    const RunResult r = run(s, c);
    std::vector<std::vector<ObjectiveVector>> all(r.snapshots);
    all.push_back(r.initial_archive.objectives());
    const HypervolumeRef ref = reference_point(all);
    double prev = hypervolume(r.initial_archive.objectives(), ref);
    for (const auto& snap : r.snapshots) {
        const double hv = hypervolume(snap, ref);
        CHECK(hv >= prev * (1 - 1e-12));
        prev = hv;
    }
}
