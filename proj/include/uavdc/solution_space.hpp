#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "uavdc/rng.hpp"
#include "uavdc/types.hpp"

namespace uavdc {

/// Default cols x rows factorization: the smallest divisor of U that is at
/// least sqrt(U) becomes the column count (6 -> 3x2, 8 -> 4x2).
std::pair<int, int> default_grid_shape(std::size_t num_hovers);

/// Maps each device to the grid cell containing it. Points on an interior
/// boundary go to the lower-index cell. Throws std::invalid_argument when
/// cols * rows != num_hovers or a device lies outside the area.
SubareaPartition partition_devices(const Rect& area, std::span<const Device> devices, std::size_t num_hovers,
                                   int grid_cols, int grid_rows);
SubareaPartition partition_devices(const Scenario& scn, std::size_t num_hovers);

/// Cell index for a point under the same tie rule as partition_devices.
std::size_t cell_index(const Rect& area, int grid_cols, int grid_rows, Point2 p);

/// Whether cell `cell` contains p. Cells are half-open (lo, hi] except the
/// first row/column, which also include the area's lower edge.
bool cell_contains(const Rect& area, int grid_cols, int grid_rows, std::size_t cell, Point2 p);

Bounds scenario_bounds(const Scenario& scn);

enum class Constraint { hover_x_box, hover_y_box, power_box, speed_box, shape, visit_permutation };

struct Violation {
    Constraint constraint;
    std::size_t index = 0;
    std::size_t other_index = 0;  // second position for duplicated visit entries
    std::string message;
};

/// Empty result means the solution satisfies every box constraint and the
/// visit sequence is a permutation of 0..U-1.
std::vector<Violation> validate(const SolutionVector& x, const Bounds& b);
inline bool is_valid(const SolutionVector& x, const Bounds& b) { return validate(x, b).empty(); }

/// Projects every continuous gene onto its box; visit_seq untouched.
SolutionVector clamp(SolutionVector x, const Bounds& b);

/// start -> hover[visit_seq[0]] -> ... -> hover[visit_seq[U-1]] -> end.
/// Segment i (< U) uses speeds[i]; the final leg reuses speeds[U-1].
std::vector<PathSegment> path_segments(const SolutionVector& x, const Scenario& scn);

/// Start, visited hovers in order, end.
std::vector<Point2> trajectory_polyline(const SolutionVector& x, const Scenario& scn);

double path_length(std::span<const PathSegment> segments);

SolutionVector random_solution(const Bounds& b, std::size_t num_hovers, std::size_t num_devices, Rng& rng);

/// Continuous genes flattened as [hover_x, hover_y, speeds, powers] (3U + K).
std::vector<double> continuous_genes(const SolutionVector& x);
void set_continuous_genes(SolutionVector& x, std::span<const double> genes);
/// Box for each flattened continuous gene.
std::vector<Interval> continuous_bounds(const Bounds& b, std::size_t num_hovers, std::size_t num_devices);

/// Candidate values per continuous component, used to discretize the search
/// space for exhaustive enumeration.
struct GeneGrid {
    std::vector<double> hover_x;
    std::vector<double> hover_y;
    std::vector<double> speed;
    std::vector<double> power;
};

/// n evenly spaced values per component including both ends (n == 1 gives
/// the box midpoint).
GeneGrid uniform_gene_grid(const Bounds& b, std::size_t points_per_gene);

/// Moves every continuous gene to the nearest grid value (ties: lower value).
SolutionVector snap_to_grid(SolutionVector x, const GeneGrid& grid);

}  // namespace uavdc
