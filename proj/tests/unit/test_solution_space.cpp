#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "uavdc/rng.hpp"
#include "uavdc/solution_space.hpp"

using namespace uavdc;

namespace {

Scenario line_scenario() {
    Scenario s;
    s.area = {0, 1000, 0, 1000};
    s.num_hovers = 2;
    s.devices = {Device{0, {100, 100}, 1e6}, Device{1, {900, 900}, 1e6}};
    s.start_pos = {0, 0};
    s.end_pos = {1000, 0};
    s.partition = partition_devices(s.area, s.devices, 2, 2, 1);
    return s;
}

}  // namespace

TEST_CASE("default grid shapes") {
    CHECK(default_grid_shape(1) == std::pair{1, 1});
    CHECK(default_grid_shape(2) == std::pair{2, 1});
    CHECK(default_grid_shape(4) == std::pair{2, 2});
    CHECK(default_grid_shape(6) == std::pair{3, 2});
    CHECK(default_grid_shape(8) == std::pair{4, 2});
    CHECK(default_grid_shape(7) == std::pair{7, 1});
    CHECK_THROWS(default_grid_shape(0));
}

TEST_CASE("cell assignment is row-major with boundaries to the lower cell") {
    const Rect a{0, 1000, 0, 1000};
    CHECK(cell_index(a, 3, 2, {0, 0}) == 0);
    CHECK(cell_index(a, 3, 2, {1000, 1000}) == 5);
    CHECK(cell_index(a, 3, 2, {999, 10}) == 2);
    CHECK(cell_index(a, 3, 2, {10, 999}) == 3);
    CHECK(cell_index(a, 2, 1, {500, 10}) == 0);
    CHECK(cell_index(a, 2, 1, {500.0001, 10}) == 1);
    CHECK(cell_contains(a, 2, 1, 0, {500, 10}));
    CHECK_FALSE(cell_contains(a, 2, 1, 1, {500, 10}));
    CHECK(cell_contains(a, 2, 1, 0, {0, 0}));
    CHECK_FALSE(cell_contains(a, 2, 1, 0, {-1, 0}));
}

TEST_CASE("partition covers every device exactly once") {
    Rng rng(3);
    std::vector<Device> devs;
    for (std::size_t k = 0; k < 200; ++k) devs.push_back({k, {uniform(rng, 0, 1000), uniform(rng, 0, 1000)}, 1e6});
    const Rect a{0, 1000, 0, 1000};
    const auto part = partition_devices(a, devs, 6, 3, 2);
    std::size_t total = 0;
    for (std::size_t c = 0; c < 6; ++c) {
        total += part.devices_in_cell[c].size();
        for (std::size_t k : part.devices_in_cell[c]) {
            CHECK(part.cell_of_device[k] == c);
            CHECK(cell_contains(a, 3, 2, c, devs[k].pos));
        }
    }
    CHECK(total == devs.size());
    CHECK_THROWS(partition_devices(a, devs, 6, 4, 2));
    devs.push_back({200, {2000, 0}, 1e6});
    CHECK_THROWS(partition_devices(a, devs, 6, 3, 2));
}

TEST_CASE("validation reports each violated constraint") {
    const Bounds b{{0, 1000}, {0, 1000}, {10, 20}, {0.1, 10}};
    SolutionVector x{{10, 20}, {30, 40}, {1, 0}, {12, 15}, {1, 2, 3}};
    CHECK(is_valid(x, b));
    SolutionVector bad = x;
    bad.hover_x[1] = 1200;
    bad.speeds[0] = 25;
    bad.powers[2] = 0;
    const auto v = validate(bad, b);
    REQUIRE(v.size() == 3);
    CHECK(v[0].constraint == Constraint::hover_x_box);
    CHECK(v[0].index == 1);
    bad = x;
    bad.visit_seq = {1, 1};
    const auto dup = validate(bad, b);
    REQUIRE(dup.size() == 1);
    CHECK(dup[0].constraint == Constraint::visit_permutation);
    CHECK(dup[0].index == 0);
    CHECK(dup[0].other_index == 1);
    bad = x;
    bad.visit_seq = {0, 2};
    CHECK_FALSE(is_valid(bad, b));
    bad = x;
    bad.speeds.pop_back();
    CHECK(validate(bad, b).at(0).constraint == Constraint::shape);
}

TEST_CASE("clamp projects onto the box") {
    const Bounds b{{0, 1000}, {0, 1000}, {10, 20}, {0.1, 10}};
    SolutionVector x{{-5, 2000}, {500, 500}, {1, 0}, {5, 25}, {50}};
    const auto c = clamp(x, b);
    CHECK(c.hover_x == std::vector<double>{0, 1000});
    CHECK(c.speeds == std::vector<double>{10, 20});
    CHECK(c.powers == std::vector<double>{10});
    CHECK(c.visit_seq == x.visit_seq);
    CHECK(is_valid(c, b));
}

TEST_CASE("path follows the visit order") {
    const Scenario s = line_scenario();
    SolutionVector x{{300, 700}, {0, 0}, {1, 0}, {10, 20}, {1, 1}};
    const auto segs = path_segments(x, s);
    REQUIRE(segs.size() == 3);
    CHECK(segs[0].length_m == doctest::Approx(700));
    CHECK(segs[0].speed_mps == 10);
    CHECK(segs[1].length_m == doctest::Approx(400));
    CHECK(segs[1].speed_mps == 20);
    CHECK(segs[2].length_m == doctest::Approx(700));
    CHECK(segs[2].speed_mps == 20);
    CHECK(path_length(segs) == doctest::Approx(1800));
    const auto poly = trajectory_polyline(x, s);
    REQUIRE(poly.size() == 4);
    CHECK(poly[1] == Point2{700, 0});
    CHECK(poly[3] == s.end_pos);
}

TEST_CASE("random solutions are valid and seeded") {
    const Bounds b{{0, 1000}, {0, 500}, {10, 20}, {0.1, 10}};
    Rng r1(9), r2(9);
    for (int t = 0; t < 100; ++t) {
        const auto x = random_solution(b, 6, 20, r1);
        CHECK(is_valid(x, b));
        CHECK(x == random_solution(b, 6, 20, r2));
    }
}

TEST_CASE("continuous gene round trip") {
    Rng rng(1);
    const Bounds b{{0, 1000}, {0, 1000}, {10, 20}, {0.1, 10}};
    const auto x = random_solution(b, 3, 5, rng);
    const auto g = continuous_genes(x);
    CHECK(g.size() == 3 * 3 + 5);
    CHECK(g[3] == x.hover_y[0]);
    CHECK(g[6] == x.speeds[0]);
    CHECK(g[9] == x.powers[0]);
    SolutionVector y = x;
    set_continuous_genes(y, std::vector<double>(g.size(), 1.0));
    CHECK(y.speeds[2] == 1.0);
    set_continuous_genes(y, g);
    CHECK(y == x);
    const auto cb = continuous_bounds(b, 3, 5);
    CHECK(cb.size() == g.size());
    CHECK(cb[7].lo == 10);
    CHECK(cb[13].hi == 10);
}

TEST_CASE("gene grid and snapping") {
    const Bounds b{{0, 1000}, {0, 1000}, {10, 20}, {0.1, 10}};
    const auto g = uniform_gene_grid(b, 3);
    CHECK(g.hover_x == std::vector<double>{0, 500, 1000});
    CHECK(g.speed == std::vector<double>{10, 15, 20});
    CHECK(uniform_gene_grid(b, 1).power == std::vector<double>{5.05});
    SolutionVector x{{250, 251}, {740, 1000}, {0, 1}, {12.5, 19}, {0.2}};
    const auto s = snap_to_grid(x, g);
    CHECK(s.hover_x == std::vector<double>{0, 500});
    CHECK(s.hover_y == std::vector<double>{500, 1000});
    CHECK(s.speeds == std::vector<double>{10, 20});
    CHECK(s.powers == std::vector<double>{0.1});
    CHECK(snap_to_grid(s, g) == s);
}
