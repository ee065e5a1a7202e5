#include "uavdc/solution_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavdc {

std::pair<int, int> default_grid_shape(std::size_t num_hovers) {
    if (num_hovers == 0) throw std::invalid_argument("num_hovers must be >= 1");
    std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(num_hovers))));
    while (num_hovers % cols != 0) ++cols;
    return {static_cast<int>(cols), static_cast<int>(num_hovers / cols)};
}

namespace {

// Zero-based slot of coordinate v among n equal bins over [lo, hi]; a value
// exactly on an interior edge belongs to the lower bin.
int bin_of(double v, double lo, double hi, int n) {
    const double t = (v - lo) * n / (hi - lo);
    int b = static_cast<int>(std::ceil(t)) - 1;
    return std::clamp(b, 0, n - 1);
}

}  // namespace

std::size_t cell_index(const Rect& area, int grid_cols, int grid_rows, Point2 p) {
    const int col = bin_of(p.x, area.x_min, area.x_max, grid_cols);
    const int row = bin_of(p.y, area.y_min, area.y_max, grid_rows);
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(grid_cols) + static_cast<std::size_t>(col);
}

bool cell_contains(const Rect& area, int grid_cols, int grid_rows, std::size_t cell, Point2 p) {
    if (!area.contains(p)) return false;
    const int col = static_cast<int>(cell % static_cast<std::size_t>(grid_cols));
    const int row = static_cast<int>(cell / static_cast<std::size_t>(grid_cols));
    if (row >= grid_rows) return false;
    auto in_bin = [](double v, double lo, double hi, int n, int b) {
        const double t = (v - lo) * n / (hi - lo);
        const bool above_lower = b == 0 ? t >= 0.0 : t > static_cast<double>(b);
        return above_lower && t <= static_cast<double>(b + 1);
    };
    return in_bin(p.x, area.x_min, area.x_max, grid_cols, col) && in_bin(p.y, area.y_min, area.y_max, grid_rows, row);
}

SubareaPartition partition_devices(const Rect& area, std::span<const Device> devices, std::size_t num_hovers,
                                   int grid_cols, int grid_rows) {
    if (grid_cols <= 0 || grid_rows <= 0 ||
        static_cast<std::size_t>(grid_cols) * static_cast<std::size_t>(grid_rows) != num_hovers)
        throw std::invalid_argument("partition: grid " + std::to_string(grid_cols) + "x" + std::to_string(grid_rows) +
                                    " does not factor num_hovers=" + std::to_string(num_hovers));
    SubareaPartition part;
    part.grid_cols = grid_cols;
    part.grid_rows = grid_rows;
    part.cell_of_device.resize(devices.size());
    part.devices_in_cell.assign(num_hovers, {});
    for (std::size_t k = 0; k < devices.size(); ++k) {
        if (!area.contains(devices[k].pos))
            throw std::invalid_argument("partition: device " + std::to_string(k) + " lies outside the area");
        const std::size_t cell = cell_index(area, grid_cols, grid_rows, devices[k].pos);
        part.cell_of_device[k] = cell;
        part.devices_in_cell[cell].push_back(k);
    }
    return part;
}

SubareaPartition partition_devices(const Scenario& scn, std::size_t num_hovers) {
    const auto [cols, rows] = default_grid_shape(num_hovers);
    return partition_devices(scn.area, scn.devices, num_hovers, cols, rows);
}

Bounds scenario_bounds(const Scenario& scn) {
    return {{scn.area.x_min, scn.area.x_max}, {scn.area.y_min, scn.area.y_max}, scn.speed_bounds, scn.power_bounds};
}

std::vector<Violation> validate(const SolutionVector& x, const Bounds& b) {
    std::vector<Violation> out;
    const std::size_t u = x.hover_x.size();
    if (x.hover_y.size() != u || x.speeds.size() != u || x.visit_seq.size() != u) {
        out.push_back({Constraint::shape, 0, 0, "hover_x, hover_y, speeds and visit_seq must all have length U"});
        return out;
    }
    auto check_box = [&](const std::vector<double>& v, const Interval& box, Constraint c, const char* name) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!box.contains(v[i]))
                out.push_back({c, i, i, std::string(name) + "[" + std::to_string(i) + "] out of bounds"});
        }
    };
    check_box(x.hover_x, b.hover_x, Constraint::hover_x_box, "hover_x");
    check_box(x.hover_y, b.hover_y, Constraint::hover_y_box, "hover_y");
    check_box(x.powers, b.power, Constraint::power_box, "powers");
    check_box(x.speeds, b.speed, Constraint::speed_box, "speeds");

    std::vector<std::size_t> first_seen(u, u);
    for (std::size_t i = 0; i < u; ++i) {
        const std::size_t v = x.visit_seq[i];
        if (v >= u) {
            out.push_back({Constraint::visit_permutation, i, i, "visit_seq[" + std::to_string(i) + "] out of range"});
        } else if (first_seen[v] != u) {
            out.push_back({Constraint::visit_permutation, first_seen[v], i,
                           "visit_seq repeats hover " + std::to_string(v) + " at positions " +
                               std::to_string(first_seen[v]) + " and " + std::to_string(i)});
        } else {
            first_seen[v] = i;
        }
    }
    return out;
}

SolutionVector clamp(SolutionVector x, const Bounds& b) {
    for (auto& v : x.hover_x) v = b.hover_x.clamp(v);
    for (auto& v : x.hover_y) v = b.hover_y.clamp(v);
    for (auto& v : x.speeds) v = b.speed.clamp(v);
    for (auto& v : x.powers) v = b.power.clamp(v);
    return x;
}

std::vector<Point2> trajectory_polyline(const SolutionVector& x, const Scenario& scn) {
    std::vector<Point2> pts;
    pts.reserve(x.visit_seq.size() + 2);
    pts.push_back(scn.start_pos);
    for (std::size_t idx : x.visit_seq) pts.push_back({x.hover_x.at(idx), x.hover_y.at(idx)});
    pts.push_back(scn.end_pos);
    return pts;
}

std::vector<PathSegment> path_segments(const SolutionVector& x, const Scenario& scn) {
    const auto pts = trajectory_polyline(x, scn);
    const std::size_t u = x.visit_seq.size();
    std::vector<PathSegment> segs;
    segs.reserve(u + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dx = pts[i + 1].x - pts[i].x;
        const double dy = pts[i + 1].y - pts[i].y;
        const double speed = u == 0 ? 0.0 : x.speeds.at(std::min(i, u - 1));
        segs.push_back({std::sqrt(dx * dx + dy * dy), speed});
    }
    return segs;
}

double path_length(std::span<const PathSegment> segments) {
    double d = 0.0;
    for (const auto& s : segments) d += s.length_m;
    return d;
}

SolutionVector random_solution(const Bounds& b, std::size_t num_hovers, std::size_t num_devices, Rng& rng) {
    SolutionVector x;
    x.hover_x.resize(num_hovers);
    x.hover_y.resize(num_hovers);
    x.speeds.resize(num_hovers);
    x.powers.resize(num_devices);
    for (auto& v : x.hover_x) v = uniform(rng, b.hover_x.lo, b.hover_x.hi);
    for (auto& v : x.hover_y) v = uniform(rng, b.hover_y.lo, b.hover_y.hi);
    for (auto& v : x.speeds) v = uniform(rng, b.speed.lo, b.speed.hi);
    for (auto& v : x.powers) v = uniform(rng, b.power.lo, b.power.hi);
    x.visit_seq.resize(num_hovers);
    std::iota(x.visit_seq.begin(), x.visit_seq.end(), std::size_t{0});
    // Fisher-Yates with the portable index draw.
    for (std::size_t i = num_hovers; i > 1; --i) std::swap(x.visit_seq[i - 1], x.visit_seq[uniform_index(rng, i)]);
    return x;
}

std::vector<double> continuous_genes(const SolutionVector& x) {
    std::vector<double> g;
    g.reserve(3 * x.hover_x.size() + x.powers.size());
    g.insert(g.end(), x.hover_x.begin(), x.hover_x.end());
    g.insert(g.end(), x.hover_y.begin(), x.hover_y.end());
    g.insert(g.end(), x.speeds.begin(), x.speeds.end());
    g.insert(g.end(), x.powers.begin(), x.powers.end());
    return g;
}

void set_continuous_genes(SolutionVector& x, std::span<const double> genes) {
    const std::size_t u = x.hover_x.size();
    const std::size_t k = x.powers.size();
    if (genes.size() != 3 * u + k) throw std::invalid_argument("set_continuous_genes: length mismatch");
    auto it = genes.begin();
    std::copy_n(it, u, x.hover_x.begin());
    std::copy_n(it + u, u, x.hover_y.begin());
    std::copy_n(it + 2 * u, u, x.speeds.begin());
    std::copy_n(it + 3 * u, k, x.powers.begin());
}

std::vector<Interval> continuous_bounds(const Bounds& b, std::size_t num_hovers, std::size_t num_devices) {
    std::vector<Interval> out;
    out.reserve(3 * num_hovers + num_devices);
    out.insert(out.end(), num_hovers, b.hover_x);
    out.insert(out.end(), num_hovers, b.hover_y);
    out.insert(out.end(), num_hovers, b.speed);
    out.insert(out.end(), num_devices, b.power);
    return out;
}

namespace {

std::vector<double> even_points(const Interval& box, std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_gene_grid: need at least one point");
    if (n == 1) return {0.5 * (box.lo + box.hi)};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = box.lo + (box.hi - box.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = box.hi;
    return v;
}

double nearest(const std::vector<double>& values, double g) {
    double best = values.front();
    for (double v : values)
        if (std::abs(v - g) < std::abs(best - g)) best = v;
    return best;
}

}  // namespace

GeneGrid uniform_gene_grid(const Bounds& b, std::size_t points_per_gene) {
    return {even_points(b.hover_x, points_per_gene), even_points(b.hover_y, points_per_gene),
            even_points(b.speed, points_per_gene), even_points(b.power, points_per_gene)};
}

SolutionVector snap_to_grid(SolutionVector x, const GeneGrid& grid) {
    for (auto& v : x.hover_x) v = nearest(grid.hover_x, v);
    for (auto& v : x.hover_y) v = nearest(grid.hover_y, v);
    for (auto& v : x.speeds) v = nearest(grid.speed, v);
    for (auto& v : x.powers) v = nearest(grid.power, v);
    return x;
}

}  // namespace uavdc
