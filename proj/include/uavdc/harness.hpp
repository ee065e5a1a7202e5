#pragma once

// Experiment configuration, seeded batch execution, result export and
// paired comparison of two algorithms.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavdc/metrics.hpp"
#include "uavdc/moaha_engine.hpp"
#include "uavdc/types.hpp"

namespace uavdc {

/// Configuration problem; `key()` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct ScenarioConfig {
    Rect area{0.0, 1000.0, 0.0, 1000.0};
    double altitude_m = 100.0;
    std::size_t num_devices = 100;
    std::size_t num_hovers = 6;
    int grid_cols = 0;  // 0: default_grid_shape(num_hovers)
    int grid_rows = 0;
    std::uint64_t placement_seed = 1;
    std::optional<std::vector<Device>> devices;  // explicit placement overrides the seeded one
    Interval data_bits{1e6, 1e7};
    std::optional<Point2> start;  // default: (x_min, y_min)
    std::optional<Point2> end;    // default: (x_max, y_max)
    ChannelParams channel;
    UavPowerParams uav_power;
    Interval power_bounds{0.1, 10.0};
    Interval speed_bounds{10.0, 20.0};
};

/// Places devices, partitions the area and validates the result.
Scenario build_scenario(const ScenarioConfig& sc);

struct NamedAlgo {
    std::string name;
    AlgoConfig config;
};

struct ExperimentConfig {
    ScenarioConfig scenario;
    std::vector<NamedAlgo> algorithms;
    std::size_t runs = 30;
    std::uint64_t master_seed = 20240601;
    std::string output_dir = "results";
    std::size_t snap_grid_points = 0;  // > 0: discretize every continuous gene
};

/// Desk-scale instance for exhaustive checks: U = 2 hovers, K = 4 devices,
/// two in each half of the area.
ScenarioConfig tiny_scenario_config();

/// Default experiment: K = 100, U = 6, 200 iterations, 30 runs, IMOAHA and MOAHA.
ExperimentConfig default_config();

/// Parses the JSON configuration; omitted keys keep their defaults, an empty
/// document yields default_config(). Decibel entries are converted to linear.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Re-checks every range constraint. Throws ConfigError.
void validate_experiment(const ExperimentConfig& cfg);

/// Canonical JSON of the fully resolved configuration (linear units).
std::string resolved_config_json(const ExperimentConfig& cfg);
/// FNV-1a of resolved_config_json, 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

struct RunRecord {
    std::string algorithm;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
    bool failed = false;
    std::string error;
    Archive archive;
    std::vector<std::vector<ObjectiveVector>> snapshots;
    EngineStats stats;
    PhaseTimings timings;
    double wall_s = 0.0;
};

/// Per-run seed shared by every algorithm for run index `run` (paired runs).
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run);

/// Every algorithm x run, in (algorithm, run) order. Engine failures are
/// recorded on the record instead of aborting the batch. `jobs` > 1 runs
/// independent records concurrently; results do not depend on it.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1);

/// Knee-point entry of a record's final archive.
std::size_t representative_index(const RunRecord& rec);

/// Writes summary.csv, archive/*.jsonl, trace/*.csv, plot/*.csv,
/// config.json and timings.csv under `outdir`.
void export_results(std::span<const RunRecord> records, const ExperimentConfig& cfg, const Scenario& scn,
                    const std::filesystem::path& outdir);

/// Six significant digits, fixed decimal notation, no exponent.
std::string format_number(double v);

// ------------------------------------------------------------------ compare

struct RunFront {
    std::string algorithm;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::vector<ObjectiveVector> front;
};

std::vector<RunFront> fronts_of(std::span<const RunRecord> records, std::string_view algorithm);

/// Reads summary.csv and the archive dumps of one results directory. An
/// empty `algorithm` accepts only a directory holding a single algorithm.
std::vector<RunFront> load_fronts(const std::filesystem::path& dir, std::string_view algorithm = {});

struct PairedRow {
    std::size_t run = 0;
    double hv_a = 0.0, hv_b = 0.0;
    double d_hv = 0.0;       // a - b
    double d_rate = 0.0;     // best f1, a - b (bps)
    double d_dev_e = 0.0;    // best f2, a - b (J)
    double d_uav_e = 0.0;    // best f3, a - b (J)
    double objective_score_a = 0.0;  // objectives a wins (ties count half)
};

struct Stat {
    double mean = 0.0;
    double stddev = 0.0;
};

struct ComparisonReport {
    std::string name_a, name_b;
    HypervolumeRef ref;
    std::vector<PairedRow> rows;
    Stat hv_a, hv_b, rate_a, rate_b, dev_e_a, dev_e_b, uav_e_a, uav_e_b;
    double hv_win_fraction_a = 0.0;                    // ties count half
    std::array<double, 3> objective_win_fraction_a{};  // per objective, ties count half
    double two_of_three_fraction_a = 0.0;              // runs where a wins >= 2 objectives
    std::array<bool, 4> a_better_mean{};               // hv, f1, f2, f3
};

/// Paired per-run comparison; throws std::invalid_argument on unequal run
/// sets. The reference point is shared across both sides.
ComparisonReport compare(std::span<const RunFront> a, std::span<const RunFront> b);

std::string format_report(const ComparisonReport& rep);
void write_report_csv(const ComparisonReport& rep, const std::filesystem::path& path);

}  // namespace uavdc
