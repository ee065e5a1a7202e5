#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uavdc/archive.hpp"
#include "uavdc/solution_space.hpp"
#include "uavdc/types.hpp"

namespace uavdc {

struct HypervolumeRef {
    ObjectiveVector point;
};

/// Per-objective max over every point of every front, pushed outward by 10%
/// of its magnitude (by 1 when the max is zero).
HypervolumeRef reference_point(std::span<const std::vector<ObjectiveVector>> fronts);

/// Exact three-objective hypervolume by slicing along the last objective.
/// Dominated points are allowed and contribute nothing. Throws
/// std::invalid_argument if a point does not strictly dominate the reference.
double hypervolume(std::span<const ObjectiveVector> front, const HypervolumeRef& ref);

struct BestObjectives {
    double max_min_rate_bps = 0.0;
    double min_device_energy_j = 0.0;
    double min_uav_energy_j = 0.0;
};

BestObjectives best_per_objective(std::span<const ObjectiveVector> objs);
BestObjectives best_per_objective(const Archive& arch);

/// Mean of each objective over the set (f1 reported positive).
BestObjectives mean_objectives(std::span<const ObjectiveVector> objs);

/// Entry closest to the per-objective ideal point after min-max
/// normalization; ties to the lowest index.
std::size_t knee_point_index(std::span<const ObjectiveVector> objs);

struct OracleFront {
    std::vector<SolutionVector> solutions;
    std::vector<ObjectiveVector> objectives;
    std::size_t enumerated = 0;
};

/// Counts grid combinations times visit permutations; saturates at SIZE_MAX.
std::size_t enumeration_size(const Scenario& scn, const GeneGrid& grid);

/// Evaluates every grid combination under every visit permutation and keeps
/// the nondominated, deduplicated set. Refuses (std::length_error) when the
/// enumeration exceeds `cap`.
OracleFront brute_force_front(const Scenario& scn, const GeneGrid& grid, std::size_t cap = 10'000'000);

}  // namespace uavdc
