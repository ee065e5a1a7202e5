#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "uavdc/harness.hpp"
#include "uavdc/metrics.hpp"
#include "uavdc/scenario_model.hpp"

using namespace uavdc;

namespace {

// Monte Carlo-free reference: inclusion-exclusion over boxes for tiny sets.
double hv_inclusion_exclusion(const std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref) {
    const std::size_t n = pts.size();
    double total = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::array<double, 3> corner{-INFINITY, -INFINITY, -INFINITY};
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                ++bits;
                for (std::size_t j = 0; j < 3; ++j) corner[j] = std::max(corner[j], pts[i][j]);
            }
        double vol = 1.0;
        for (std::size_t j = 0; j < 3; ++j) vol *= std::max(0.0, ref[j] - corner[j]);
        total += (bits % 2 ? 1.0 : -1.0) * vol;
    }
    return total;
}

}  // namespace

TEST_CASE("reference point") {
    const std::vector<std::vector<ObjectiveVector>> fronts{{{-100, 2, 10}}, {{-50, 4, 0}}};
    const auto r = reference_point(fronts);
    CHECK(r.point.neg_min_rate == doctest::Approx(-45));
    CHECK(r.point.device_energy_j == doctest::Approx(4.4));
    CHECK(r.point.uav_energy_j == doctest::Approx(11));
    const std::vector<std::vector<ObjectiveVector>> zero{{{0, 0, 0}}};
    CHECK(reference_point(zero).point == ObjectiveVector{1, 1, 1});
    CHECK_THROWS(reference_point(std::vector<std::vector<ObjectiveVector>>{}));
}

TEST_CASE("hypervolume of simple sets") {
    const HypervolumeRef ref{{1, 1, 1}};
    CHECK(hypervolume(std::vector<ObjectiveVector>{{0, 0, 0}}, ref) == doctest::Approx(1.0));
    CHECK(hypervolume(std::vector<ObjectiveVector>{}, ref) == 0.0);
    const std::vector<ObjectiveVector> two{{0, 0.5, 0.5}, {0.5, 0, 0}};
    CHECK(hypervolume(two, ref) == doctest::Approx(0.25 + 0.5 - 0.125));
    const std::vector<ObjectiveVector> with_dominated{{0, 0.5, 0.5}, {0.5, 0, 0}, {0.6, 0.6, 0.6}};
    CHECK(hypervolume(with_dominated, ref) == doctest::Approx(hypervolume(two, ref)));
    CHECK_THROWS(hypervolume(std::vector<ObjectiveVector>{{1, 0, 0}}, ref));
}

TEST_CASE("hypervolume matches inclusion-exclusion") {
    Rng rng(99);
    for (int t = 0; t < 300; ++t) {
        const auto pts = oracle::random_points(rng, 1 + uniform_index(rng, 9), t % 4 == 0);
        const ObjectiveVector ref{5.5, 5.5, 5.5};
        REQUIRE(hypervolume(pts, {ref}) == doctest::Approx(hv_inclusion_exclusion(pts, ref)).epsilon(1e-10));
    }
}

TEST_CASE("best, mean and knee") {
    const std::vector<ObjectiveVector> objs{{-10, 5, 1}, {-4, 1, 3}, {-6, 2, 2}};
    const auto b = best_per_objective(objs);
    CHECK(b.max_min_rate_bps == 10);
    CHECK(b.min_device_energy_j == 1);
    CHECK(b.min_uav_energy_j == 1);
    const auto m = mean_objectives(objs);
    CHECK(m.max_min_rate_bps == doctest::Approx(20.0 / 3));
    CHECK(knee_point_index(objs) == 2);
    CHECK_THROWS(best_per_objective(std::vector<ObjectiveVector>{}));
}

TEST_CASE("brute-force front is the nondominated subset of the enumeration") {
    ScenarioConfig sc = tiny_scenario_config();
    sc.devices->resize(2);
    sc.num_devices = 2;
    const Scenario s = build_scenario(sc);
    const GeneGrid g = uniform_gene_grid(scenario_bounds(s), 2);
    CHECK(enumeration_size(s, g) == 256 * 2);
    const OracleFront f = brute_force_front(s, g);
    CHECK(f.enumerated == 512);
    REQUIRE_FALSE(f.objectives.empty());

    // Re-enumerate independently and filter pairwise.
    std::vector<ObjectiveVector> all;
    for (std::size_t combo = 0; combo < 256; ++combo)
        for (int p = 0; p < 2; ++p) {
            std::size_t c = combo;
            auto pick = [&](const std::vector<double>& v) {
                const double x = v[c % 2];
                c /= 2;
                return x;
            };
            SolutionVector x;
            x.hover_x = {pick(g.hover_x), pick(g.hover_x)};
            x.hover_y = {pick(g.hover_y), pick(g.hover_y)};
            x.speeds = {pick(g.speed), pick(g.speed)};
            x.powers = {pick(g.power), pick(g.power)};
            x.visit_seq = p ? std::vector<std::size_t>{1, 0} : std::vector<std::size_t>{0, 1};
            all.push_back(evaluate_objectives(s, x));
        }
    std::vector<ObjectiveVector> expected;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < all.size() && keep; ++j)
            if (oracle::dominates(all[j], all[i]) || (j < i && all[j] == all[i])) keep = false;
        if (keep) expected.push_back(all[i]);
    }
    auto key = [](const ObjectiveVector& a, const ObjectiveVector& b) {
        return std::tie(a.neg_min_rate, a.device_energy_j, a.uav_energy_j) <
               std::tie(b.neg_min_rate, b.device_energy_j, b.uav_energy_j);
    };
    std::vector<ObjectiveVector> got = f.objectives;
    std::sort(got.begin(), got.end(), key);
    std::sort(expected.begin(), expected.end(), key);
    CHECK(got == expected);
    for (std::size_t i = 0; i < f.solutions.size(); ++i) CHECK(evaluate_objectives(s, f.solutions[i]) == f.objectives[i]);
}

TEST_CASE("brute force refuses oversized instances") {
    const Scenario s = build_scenario(ScenarioConfig{});
    const GeneGrid g = uniform_gene_grid(scenario_bounds(s), 3);
    CHECK(enumeration_size(s, g) == std::numeric_limits<std::size_t>::max());
    CHECK_THROWS_AS(brute_force_front(s, g), std::length_error);
}
