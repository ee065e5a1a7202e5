#include "uavdc/archive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uavdc/kernels.hpp"

namespace uavdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Columns {
    std::vector<double> f0, f1, f2;

    explicit Columns(std::span<const ObjectiveVector> objs) {
        f0.reserve(objs.size());
        f1.reserve(objs.size());
        f2.reserve(objs.size());
        for (const auto& o : objs) {
            f0.push_back(o.neg_min_rate);
            f1.push_back(o.device_energy_j);
            f2.push_back(o.uav_energy_j);
        }
    }
    kernels::ObjectiveColumns view() const { return {f0, f1, f2}; }
};

std::array<double, 3> as_array(const ObjectiveVector& o) { return {o.neg_min_rate, o.device_energy_j, o.uav_energy_j}; }

}  // namespace

std::vector<ObjectiveVector> Archive::objectives() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.objectives);
    return out;
}

std::size_t FrontRank::num_fronts() const { return rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end()); }

std::vector<std::size_t> FrontRank::front(std::size_t r) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rank.size(); ++i)
        if (rank[i] == r) out.push_back(i);
    return out;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strictly = false;
    for (std::size_t j = 0; j < ObjectiveVector::size(); ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strictly = true;
    }
    return strictly;
}

FrontRank nondominated_sort(std::span<const ObjectiveVector> objs) {
    const std::size_t n = objs.size();
    FrontRank out;
    out.rank.assign(n, 0);
    if (n == 0) return out;

    const Columns cols(objs);
    std::vector<std::vector<std::size_t>> dominated_set(n);
    std::vector<std::size_t> dominator_count(n, 0);
    std::vector<std::uint8_t> rel(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = as_array(objs[i]);
        kernels::dominance_row(p.data(), cols.view(), rel);
        for (std::size_t j = 0; j < n; ++j) {
            if (rel[j] & kernels::kPDominates) dominated_set[i].push_back(j);
            if (rel[j] & kernels::kQDominates) ++dominator_count[i];
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominator_count[i] == 0) current.push_back(i);
    std::size_t r = 1;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            out.rank[i] = r;
            for (std::size_t j : dominated_set[i])
                if (--dominator_count[j] == 0) next.push_back(j);
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
        ++r;
    }
    return out;
}

Accept nds_accept(std::size_t incumbent_rank, std::size_t candidate_rank, double draw) {
    if (candidate_rank < incumbent_rank) return Accept::candidate;
    if (candidate_rank > incumbent_rank) return Accept::incumbent;
    return draw < 0.5 ? Accept::candidate : Accept::incumbent;
}

Accept nds_accept(std::size_t incumbent_rank, std::size_t candidate_rank, Rng& rng) {
    if (candidate_rank != incumbent_rank) return nds_accept(incumbent_rank, candidate_rank, 0.0);
    return nds_accept(incumbent_rank, candidate_rank, uniform01(rng));
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    const std::size_t n = front.size();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), kInf);
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < ObjectiveVector::size(); ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return front[a][j] < front[b][j]; });
        dist[order.front()] = kInf;
        dist[order.back()] = kInf;
        const double range = front[order.back()][j] - front[order.front()][j];
        if (!(range > 0.0) || !std::isfinite(range)) continue;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (std::isinf(dist[order[i]])) continue;
            dist[order[i]] += (front[order[i + 1]][j] - front[order[i - 1]][j]) / range;
        }
    }
    return dist;
}

Archive decd_truncate(Archive arch, DecdTrace* trace) {
    while (arch.entries.size() > arch.capacity) {
        auto& es = arch.entries;
        std::size_t victim = 0;
        for (std::size_t i = 1; i < es.size(); ++i)
            if (es[i].crowding < es[victim].crowding) victim = i;

        // Normalization over the archive as it stood before the removal.
        std::array<double, 3> lo{kInf, kInf, kInf}, hi{-kInf, -kInf, -kInf};
        for (const auto& e : es)
            for (std::size_t j = 0; j < 3; ++j) {
                lo[j] = std::min(lo[j], e.objectives[j]);
                hi[j] = std::max(hi[j], e.objectives[j]);
            }
        std::array<double, 3> scale{};
        for (std::size_t j = 0; j < 3; ++j) scale[j] = hi[j] > lo[j] ? 1.0 / (hi[j] - lo[j]) : 0.0;

        const auto removed = as_array(es[victim].objectives);
        es.erase(es.begin() + static_cast<std::ptrdiff_t>(victim));
        if (trace) trace->removed_positions.push_back(victim);
        if (es.empty()) break;

        std::vector<ObjectiveVector> objs;
        objs.reserve(es.size());
        for (const auto& e : es) objs.push_back(e.objectives);
        const Columns cols(objs);
        std::vector<double> d2(es.size());
        kernels::scaled_sq_distances(removed.data(), cols.view(), scale.data(), d2);
        const std::size_t nearest =
            static_cast<std::size_t>(std::min_element(d2.begin(), d2.end()) - d2.begin());

        es[nearest].crowding = crowding_distance(objs)[nearest];
        if (trace) trace->updated_positions.push_back(nearest);
    }
    return arch;
}

std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> objs) {
    const std::size_t n = objs.size();
    std::vector<std::size_t> keep;
    if (n == 0) return keep;
    const Columns cols(objs);
    std::vector<std::uint8_t> rel(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (objs[i].is_infeasible()) continue;
        const auto p = as_array(objs[i]);
        kernels::dominance_row(p.data(), cols.view(), rel);
        bool drop = false;
        for (std::size_t j = 0; j < n && !drop; ++j) {
            if (rel[j] & kernels::kQDominates) drop = true;
            else if ((rel[j] & kernels::kEqual) && j < i) drop = true;
        }
        if (!drop) keep.push_back(i);
    }
    return keep;
}

Archive archive_update(Archive arch, std::span<const ArchiveEntry> candidates, DecdTrace* trace) {
    std::vector<ArchiveEntry> pool = std::move(arch.entries);
    for (const auto& c : candidates)
        if (!c.objectives.is_infeasible()) pool.push_back(c);

    std::vector<ObjectiveVector> objs;
    objs.reserve(pool.size());
    for (const auto& e : pool) objs.push_back(e.objectives);
    const auto keep = nondominated_indices(objs);

    Archive next;
    next.capacity = arch.capacity;
    next.entries.reserve(keep.size());
    std::vector<ObjectiveVector> kept_objs;
    kept_objs.reserve(keep.size());
    for (std::size_t i : keep) {
        next.entries.push_back(std::move(pool[i]));
        kept_objs.push_back(objs[i]);
    }
    const auto cd = crowding_distance(kept_objs);
    for (std::size_t i = 0; i < next.entries.size(); ++i) next.entries[i].crowding = cd[i];
    return decd_truncate(std::move(next), trace);
}

}  // namespace uavdc
