#pragma once

// Pareto machinery: dominance, fast non-dominated sorting, the front-rank
// acceptance rule, crowding distance and the fixed-size external archive with
// dynamic elimination-based crowding distance (DECD) truncation.

#include <cstddef>
#include <span>
#include <vector>

#include "uavdc/rng.hpp"
#include "uavdc/types.hpp"

namespace uavdc {

struct ArchiveEntry {
    SolutionVector solution;
    ObjectiveVector objectives;
    double crowding = 0.0;
};

struct Archive {
    std::vector<ArchiveEntry> entries;
    std::size_t capacity = 0;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    std::vector<ObjectiveVector> objectives() const;
};

/// One-based front index per input element; rank[i] == 1 means nondominated.
struct FrontRank {
    std::vector<std::size_t> rank;
    std::size_t num_fronts() const;
    /// Member indices of front r (one-based), ascending.
    std::vector<std::size_t> front(std::size_t r) const;
};

/// Minimization Pareto dominance.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

FrontRank nondominated_sort(std::span<const ObjectiveVector> objs);

enum class Accept { candidate, incumbent };

/// Front-rank acceptance with an explicit uniform draw in [0, 1).
Accept nds_accept(std::size_t incumbent_rank, std::size_t candidate_rank, double draw);
/// Same rule; a draw is consumed only when the ranks tie.
Accept nds_accept(std::size_t incumbent_rank, std::size_t candidate_rank, Rng& rng);

/// NSGA-II crowding distance; per-objective boundary members get +inf.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Which entries DECD touched, in order, for instrumentation.
struct DecdTrace {
    std::vector<std::size_t> removed_positions;  // position in the archive at removal time
    std::vector<std::size_t> updated_positions;  // neighbor position after the removal
};

/// Removes the minimum-crowding entry (ties: lowest index) until the archive
/// fits its capacity, refreshing only the removed entry's nearest neighbor
/// (normalized objective space) after each removal.
Archive decd_truncate(Archive arch, DecdTrace* trace = nullptr);

/// Merges feasible candidates, keeps the nondominated set (first copy of
/// duplicate objective vectors wins), recomputes crowding and truncates.
Archive archive_update(Archive arch, std::span<const ArchiveEntry> candidates, DecdTrace* trace = nullptr);

/// Indices of the nondominated, deduplicated subset of `objs`, ascending.
std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> objs);

}  // namespace uavdc
