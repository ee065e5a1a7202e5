#pragma once

// Population loop shared by the conventional multi-objective artificial
// hummingbird algorithm (baseline) and the improved variant (hybrid
// initialization + Cauchy mutation foraging).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavdc/archive.hpp"
#include "uavdc/imoaha_ops.hpp"
#include "uavdc/rng.hpp"
#include "uavdc/solution_space.hpp"
#include "uavdc/types.hpp"

namespace uavdc {

enum class Mode { baseline_moaha, imoaha };

struct AlgoConfig {
    std::size_t pop_size = 50;
    std::size_t max_iters = 200;
    std::size_t archive_cap = 0;       // 0: same as pop_size
    Mode mode = Mode::imoaha;
    bool hybrid_init = true;           // imoaha only
    double guided_prob = 0.5;
    double cauchy_prob = 0.2;          // imoaha only, nested inside the guided branch
    CauchyParams cauchy;
    TentParams tent;
    std::size_t migration_period = 0;  // 0: 2 * pop_size
    std::uint64_t seed = 1;
    std::optional<GeneGrid> snap;      // discretized search space when set
    std::size_t eval_threads = 1;
    bool keep_snapshots = true;

    std::size_t effective_archive_cap() const { return archive_cap == 0 ? pop_size : archive_cap; }
    std::size_t effective_migration_period() const { return migration_period == 0 ? 2 * pop_size : migration_period; }
};

/// Throws std::invalid_argument naming the offending field.
void validate_config(const AlgoConfig& cfg);

/// Staleness of each food source as seen from each bird; higher means
/// longer unvisited. The diagonal is ignored.
class VisitTable {
public:
    VisitTable() = default;
    explicit VisitTable(std::size_t n);

    std::size_t size() const { return n_; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

    /// Row i ages by one, then (i, target) resets to zero.
    void record_guided(std::size_t i, std::size_t target);
    /// Row i ages by one.
    void record_territorial(std::size_t i);
    /// Source i was refreshed: every other bird sees it as the stalest entry
    /// of its row.
    void refill(std::size_t i);
    /// Bookkeeping for a migrated (reinitialized) source.
    void record_migration(std::size_t i);

    /// Stalest source for bird i; ties go to the best (lowest) rank, then the
    /// lowest index.
    std::size_t select_target(std::size_t i, std::span<const std::size_t> ranks) const;

private:
    std::uint64_t row_max_excluding_diag(std::size_t row) const;

    std::size_t n_ = 0;
    std::vector<std::uint64_t> cells_;
};

struct Hummingbird {
    SolutionVector solution;
    ObjectiveVector objectives;
    std::size_t rank = 0;
};

struct EngineStats {
    std::size_t guided = 0;
    std::size_t territorial = 0;
    std::size_t cauchy_invocations = 0;
    std::size_t migrations = 0;
    std::size_t accepted = 0;
    std::size_t worse_front_replacements = 0;  // must stay zero
    std::size_t evaluations = 0;
};

struct PhaseTimings {
    double init_s = 0.0;
    double forage_s = 0.0;
    double evaluate_s = 0.0;
    double select_s = 0.0;
    double archive_s = 0.0;
};

struct EngineState {
    std::vector<Hummingbird> population;
    VisitTable visits;
    Archive archive;
    std::size_t iteration = 0;
    Rng rng;
    EngineStats stats;
    PhaseTimings timings;
};

enum class FlightSkill { axial, diagonal, omnidirectional };

/// 0/1 mask over `dim` coordinates for the given skill.
std::vector<double> flight_mask(FlightSkill skill, std::size_t dim, Rng& rng);
/// Picks a skill uniformly, then its mask.
std::vector<double> flight_direction(std::size_t dim, Rng& rng, FlightSkill* chosen = nullptr);

/// target + a * mask * (bird - target), elementwise.
std::vector<double> guided_update(std::span<const double> bird, std::span<const double> target, double a,
                                  std::span<const double> mask);
/// bird + b * mask * bird, elementwise.
std::vector<double> territorial_update(std::span<const double> bird, double b, std::span<const double> mask);

/// Continuous move toward `target`; visit order inherited from `lead_seq`
/// and passed through discrete_mutation; clamped.
SolutionVector guided_forage(const Hummingbird& bird, const Hummingbird& target,
                             const std::vector<std::size_t>& lead_seq, const Bounds& b, Rng& rng);

/// Local move around the bird; visit order from a uniformly chosen archive
/// member (the bird's own when the archive is empty), mutated; clamped.
SolutionVector territorial_forage(const Hummingbird& bird, const Archive& arch, const Bounds& b, Rng& rng);

/// Fresh uniformly random food source.
SolutionVector migration_forage(const Bounds& b, std::size_t num_hovers, std::size_t num_devices, Rng& rng);

/// Index of the worst-ranked bird, ties to the lowest index.
std::size_t worst_bird(std::span<const std::size_t> ranks);

/// Population lead: best rank, then largest crowding distance, then lowest index.
std::size_t lead_bird(std::span<const ObjectiveVector> objs, const FrontRank& ranks);

EngineState initialize(const Scenario& scn, const AlgoConfig& cfg);
void step(const Scenario& scn, const AlgoConfig& cfg, EngineState& state);

struct RunResult {
    Archive initial_archive;
    Archive archive;
    std::vector<std::vector<ObjectiveVector>> snapshots;  // archive objectives after each iteration
    EngineStats stats;
    PhaseTimings timings;
};

RunResult run(const Scenario& scn, const AlgoConfig& cfg);

}  // namespace uavdc
