#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

namespace uavdc {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    bool contains(Point2 p) const { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
};

/// Air-to-ground channel constants, all in linear units.
struct ChannelParams {
    double env_c = 11.95;
    double env_b = 0.136;
    double beta0 = 1e-6;
    double mu0 = 0.01;
    double alpha_los = 2.5;
    double alpha_nlos = 3.5;
    double bandwidth_hz = 10e6;
    double noise_w = 1e-14;
};

/// Rotary-wing propulsion constants. Weight, blade angular velocity and rotor
/// radius only feed the tip-speed consistency check.
struct UavPowerParams {
    double p0_w = 79.8563;
    double pi_w = 96.6850;
    double u_tip = 120.0;
    double v0 = 4.03;
    double d0 = 0.6;
    double rho = 1.225;
    double s = 0.05;
    double rotor_area = 0.503;
    double weight_kg = 2.0;
    double omega = 300.0;
    double rotor_radius = 0.4;
};

struct Device {
    std::size_t id = 0;
    Point2 pos;
    double data_bits = 0.0;
};

/// Grid of cols x rows subareas over the scenario area, row-major cell index
/// (cell = row * cols + col). Indices are zero-based.
struct SubareaPartition {
    int grid_cols = 1;
    int grid_rows = 1;
    std::vector<std::size_t> cell_of_device;
    std::vector<std::vector<std::size_t>> devices_in_cell;

    std::size_t num_cells() const { return static_cast<std::size_t>(grid_cols) * static_cast<std::size_t>(grid_rows); }
};

struct Scenario {
    Rect area{0.0, 1000.0, 0.0, 1000.0};
    double altitude_m = 100.0;
    std::vector<Device> devices;
    std::size_t num_hovers = 6;
    SubareaPartition partition;
    Point2 start_pos{0.0, 0.0};
    Point2 end_pos{1000.0, 1000.0};
    ChannelParams channel;
    UavPowerParams uav_power;
    Interval power_bounds{0.1, 10.0};
    Interval speed_bounds{10.0, 20.0};
};

/// Objectives in minimization orientation: (-f1, f2, f3).
struct ObjectiveVector {
    double neg_min_rate = 0.0;
    double device_energy_j = 0.0;
    double uav_energy_j = 0.0;

    static constexpr std::size_t size() { return 3; }

    double operator[](std::size_t i) const {
        return i == 0 ? neg_min_rate : (i == 1 ? device_energy_j : uav_energy_j);
    }

    static ObjectiveVector infeasible() {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, inf, inf};
    }

    bool is_infeasible() const {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return neg_min_rate == inf || device_energy_j == inf || uav_energy_j == inf;
    }

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// One candidate X = [hover_x, hover_y, visit_seq, speeds, powers].
/// visit_seq is a permutation of 0..U-1; speeds[i] is the speed of the path
/// segment arriving at the i-th visited hover (the final leg reuses the last).
struct SolutionVector {
    std::vector<double> hover_x;
    std::vector<double> hover_y;
    std::vector<std::size_t> visit_seq;
    std::vector<double> speeds;
    std::vector<double> powers;

    std::size_t num_hovers() const { return hover_x.size(); }
    std::size_t num_devices() const { return powers.size(); }
    std::size_t dimension() const { return 4 * hover_x.size() + powers.size(); }

    friend bool operator==(const SolutionVector&, const SolutionVector&) = default;
};

/// Box limits per continuous component.
struct Bounds {
    Interval hover_x;
    Interval hover_y;
    Interval speed;
    Interval power;
};

struct PathSegment {
    double length_m = 0.0;
    double speed_mps = 0.0;
};

}  // namespace uavdc
