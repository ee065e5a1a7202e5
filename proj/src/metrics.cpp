#include "uavdc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "uavdc/kernels.hpp"
#include "uavdc/scenario_model.hpp"

namespace uavdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Area dominated by 2-D points (a, b) below the reference (ra, rb).
double area_2d(std::vector<std::pair<double, double>> pts, double ra, double rb) {
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double best_b = rb;
    for (const auto& [a, b] : pts) {
        if (b < best_b) {
            area += (ra - a) * (best_b - b);
            best_b = b;
        }
    }
    return area;
}

}  // namespace

HypervolumeRef reference_point(std::span<const std::vector<ObjectiveVector>> fronts) {
    std::array<double, 3> hi{-kInf, -kInf, -kInf};
    bool any = false;
    for (const auto& f : fronts)
        for (const auto& o : f) {
            any = true;
            for (std::size_t j = 0; j < 3; ++j) hi[j] = std::max(hi[j], o[j]);
        }
    if (!any) throw std::invalid_argument("reference_point: no points");
    for (auto& h : hi) h = h == 0.0 ? 1.0 : h + 0.1 * std::abs(h);
    return {{hi[0], hi[1], hi[2]}};
}

double hypervolume(std::span<const ObjectiveVector> front, const HypervolumeRef& ref) {
    for (std::size_t i = 0; i < front.size(); ++i) {
        const auto& p = front[i];
        if (!(p.neg_min_rate < ref.point.neg_min_rate && p.device_energy_j < ref.point.device_energy_j &&
              p.uav_energy_j < ref.point.uav_energy_j))
            throw std::invalid_argument("hypervolume: point " + std::to_string(i) +
                                        " does not dominate the reference point");
    }
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return front[a][2] < front[b][2]; });

    double volume = 0.0;
    std::vector<std::pair<double, double>> slice;
    slice.reserve(front.size());
    for (std::size_t i = 0; i < order.size();) {
        const double z = front[order[i]][2];
        while (i < order.size() && front[order[i]][2] == z) {
            slice.emplace_back(front[order[i]][0], front[order[i]][1]);
            ++i;
        }
        const double z_next = i < order.size() ? front[order[i]][2] : ref.point[2];
        volume += area_2d(slice, ref.point[0], ref.point[1]) * (z_next - z);
    }
    return volume;
}

BestObjectives best_per_objective(std::span<const ObjectiveVector> objs) {
    if (objs.empty()) throw std::invalid_argument("best_per_objective: empty archive");
    BestObjectives b{-objs[0].neg_min_rate, objs[0].device_energy_j, objs[0].uav_energy_j};
    for (const auto& o : objs) {
        b.max_min_rate_bps = std::max(b.max_min_rate_bps, -o.neg_min_rate);
        b.min_device_energy_j = std::min(b.min_device_energy_j, o.device_energy_j);
        b.min_uav_energy_j = std::min(b.min_uav_energy_j, o.uav_energy_j);
    }
    return b;
}

BestObjectives best_per_objective(const Archive& arch) { return best_per_objective(arch.objectives()); }

BestObjectives mean_objectives(std::span<const ObjectiveVector> objs) {
    if (objs.empty()) throw std::invalid_argument("mean_objectives: empty set");
    BestObjectives m;
    for (const auto& o : objs) {
        m.max_min_rate_bps += -o.neg_min_rate;
        m.min_device_energy_j += o.device_energy_j;
        m.min_uav_energy_j += o.uav_energy_j;
    }
    const double n = static_cast<double>(objs.size());
    m.max_min_rate_bps /= n;
    m.min_device_energy_j /= n;
    m.min_uav_energy_j /= n;
    return m;
}

std::size_t knee_point_index(std::span<const ObjectiveVector> objs) {
    if (objs.empty()) throw std::invalid_argument("knee_point_index: empty set");
    std::array<double, 3> lo{kInf, kInf, kInf}, hi{-kInf, -kInf, -kInf};
    std::vector<double> c0, c1, c2;
    for (const auto& o : objs) {
        for (std::size_t j = 0; j < 3; ++j) {
            lo[j] = std::min(lo[j], o[j]);
            hi[j] = std::max(hi[j], o[j]);
        }
        c0.push_back(o[0]);
        c1.push_back(o[1]);
        c2.push_back(o[2]);
    }
    std::array<double, 3> scale{};
    for (std::size_t j = 0; j < 3; ++j) scale[j] = hi[j] > lo[j] ? 1.0 / (hi[j] - lo[j]) : 0.0;
    std::vector<double> d2(objs.size());
    kernels::scaled_sq_distances(lo.data(), {c0, c1, c2}, scale.data(), d2);
    return static_cast<std::size_t>(std::min_element(d2.begin(), d2.end()) - d2.begin());
}

std::size_t enumeration_size(const Scenario& scn, const GeneGrid& grid) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1;
    auto mul = [&](std::size_t f) {
        if (f != 0 && total > kMax / f) total = kMax;
        else total *= f;
    };
    const std::size_t u = scn.num_hovers, k = scn.devices.size();
    for (std::size_t i = 0; i < u; ++i) {
        mul(grid.hover_x.size());
        mul(grid.hover_y.size());
        mul(grid.speed.size());
    }
    for (std::size_t i = 0; i < k; ++i) mul(grid.power.size());
    for (std::size_t i = 2; i <= u; ++i) mul(i);
    return total;
}

OracleFront brute_force_front(const Scenario& scn, const GeneGrid& grid, std::size_t cap) {
    const std::size_t total = enumeration_size(scn, grid);
    if (total > cap)
        throw std::length_error("brute_force_front: " + std::to_string(total) + " evaluations exceed the cap of " +
                                std::to_string(cap));
    const std::size_t u = scn.num_hovers, k = scn.devices.size();

    // Mixed-radix odometer over the flattened continuous genes.
    std::vector<const std::vector<double>*> axis;
    for (std::size_t i = 0; i < u; ++i) axis.push_back(&grid.hover_x);
    for (std::size_t i = 0; i < u; ++i) axis.push_back(&grid.hover_y);
    for (std::size_t i = 0; i < u; ++i) axis.push_back(&grid.speed);
    for (std::size_t i = 0; i < k; ++i) axis.push_back(&grid.power);

    std::vector<std::size_t> perm(u);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    SolutionVector x;
    x.hover_x.resize(u);
    x.hover_y.resize(u);
    x.speeds.resize(u);
    x.powers.resize(k);
    std::vector<double> genes(axis.size());

    auto decode = [&](std::size_t combo, std::size_t perm_idx) {
        for (std::size_t g = 0; g < axis.size(); ++g) {
            genes[g] = (*axis[g])[combo % axis[g]->size()];
            combo /= axis[g]->size();
        }
        set_continuous_genes(x, genes);
        x.visit_seq = perms[perm_idx];
        return x;
    };

    struct Evaluated {
        std::size_t combo;
        std::size_t perm;
        ObjectiveVector f;
    };
    std::vector<Evaluated> all;
    all.reserve(total);
    std::size_t combos = 1;
    for (const auto* a : axis) combos *= a->size();
    for (std::size_t combo = 0; combo < combos; ++combo) {
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
            const ObjectiveVector f = evaluate_objectives(scn, decode(combo, pi));
            if (!f.is_infeasible()) all.push_back({combo, pi, f});
        }
    }

    // Lexicographic (f0, f1, f2) order: a point can only be dominated by
    // points before it, so each is screened against the running front only.
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& fa = all[a].f;
        const auto& fb = all[b].f;
        if (fa[0] != fb[0]) return fa[0] < fb[0];
        if (fa[1] != fb[1]) return fa[1] < fb[1];
        return fa[2] < fb[2];
    });

    OracleFront out;
    out.enumerated = total;
    std::vector<double> c0, c1, c2;
    std::vector<std::uint8_t> rel;
    for (std::size_t idx : order) {
        const auto& f = all[idx].f;
        const std::array<double, 3> p{f[0], f[1], f[2]};
        rel.resize(c0.size());
        kernels::dominance_row(p.data(), {c0, c1, c2}, rel);
        const bool covered = std::any_of(rel.begin(), rel.end(), [](std::uint8_t r) {
            return (r & (kernels::kQDominates | kernels::kEqual)) != 0;
        });
        if (covered) continue;
        c0.push_back(p[0]);
        c1.push_back(p[1]);
        c2.push_back(p[2]);
        out.solutions.push_back(decode(all[idx].combo, all[idx].perm));
        out.objectives.push_back(f);
    }
    return out;
}

}  // namespace uavdc
