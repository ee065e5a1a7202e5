#include "uavdc/scenario_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uavdc/kernels.hpp"
#include "uavdc/solution_space.hpp"

namespace uavdc {

double distance(const Device& device, Point2 hover, double altitude_m) {
    if (!(altitude_m > 0.0)) throw std::domain_error("distance: altitude must be positive");
    const double dx = hover.x - device.pos.x;
    const double dy = hover.y - device.pos.y;
    return std::sqrt(dx * dx + dy * dy + altitude_m * altitude_m);
}

double elevation_angle_deg(double distance_m, double altitude_m) {
    if (!(altitude_m > 0.0)) throw std::domain_error("elevation_angle_deg: altitude must be positive");
    if (distance_m < altitude_m) throw std::domain_error("elevation_angle_deg: distance below altitude");
    return (180.0 / std::numbers::pi) * std::asin(altitude_m / distance_m);
}

double los_probability(double theta_deg, const ChannelParams& ch) {
    return 1.0 / (1.0 + ch.env_c * std::exp(-ch.env_b * (theta_deg - ch.env_c)));
}

double average_pathloss(double distance_m, double theta_deg, const ChannelParams& ch) {
    if (!(distance_m > 0.0)) throw std::domain_error("average_pathloss: distance must be positive");
    const double p_los = los_probability(theta_deg, ch);
    const double h_los = ch.beta0 * std::pow(distance_m, -ch.alpha_los);
    const double h_nlos = ch.mu0 * ch.beta0 * std::pow(distance_m, -ch.alpha_nlos);
    return p_los * h_los + (1.0 - p_los) * h_nlos;
}

double transmit_rate(double power_w, double gain, const ChannelParams& ch, bool associated) {
    if (power_w < 0.0) throw std::domain_error("transmit_rate: negative power");
    if (!(gain > 0.0)) throw std::domain_error("transmit_rate: gain must be positive");
    if (!associated) return 0.0;
    return ch.bandwidth_hz * std::log2(1.0 + power_w * gain / ch.noise_w);
}

UploadCost device_energy(double power_w, double data_bits, double rate_bps) {
    if (!(data_bits > 0.0)) throw std::invalid_argument("device_energy: data volume must be positive");
    if (!(rate_bps > 0.0)) throw InfeasibleLink("device_energy: zero link rate, upload cannot finish");
    const double t = data_bits / rate_bps;
    return {t, power_w * t};
}

double propulsion_power(double speed_mps, const UavPowerParams& up) {
    if (speed_mps < 0.0) throw std::domain_error("propulsion_power: negative speed");
    const double v2 = speed_mps * speed_mps;
    const double v0_2 = up.v0 * up.v0;
    const double blade = up.p0_w * (1.0 + 3.0 * v2 / (up.u_tip * up.u_tip));
    const double induced = up.pi_w * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2));
    const double parasite = 0.5 * up.d0 * up.rho * up.s * up.rotor_area * v2 * speed_mps;
    return blade + induced + parasite;
}

double movement_energy(std::span<const PathSegment> segments, const UavPowerParams& up) {
    double total = 0.0;
    for (const auto& seg : segments) {
        if (seg.length_m < 0.0) throw std::domain_error("movement_energy: negative segment length");
        if (seg.length_m == 0.0) continue;
        if (!(seg.speed_mps > 0.0)) throw std::domain_error("movement_energy: non-positive speed on a flown segment");
        total += propulsion_power(seg.speed_mps, up) * seg.length_m / seg.speed_mps;
    }
    return total;
}

double hover_energy(double total_hover_time_s, const UavPowerParams& up) {
    if (total_hover_time_s < 0.0) throw std::domain_error("hover_energy: negative hover time");
    return (up.p0_w + up.pi_w) * total_hover_time_s;
}

EvaluationDetail evaluate_detailed(const Scenario& scn, const SolutionVector& x) {
    const std::size_t k_count = scn.devices.size();
    const std::size_t u_count = scn.num_hovers;
    if (x.hover_x.size() != u_count || x.hover_y.size() != u_count || x.speeds.size() != u_count ||
        x.visit_seq.size() != u_count || x.powers.size() != k_count)
        throw std::invalid_argument("evaluate_objectives: solution shape does not match scenario");
    if (scn.partition.cell_of_device.size() != k_count)
        throw std::invalid_argument("evaluate_objectives: scenario partition is stale");

    EvaluationDetail out;
    out.rate_bps.resize(k_count);
    out.upload_time_s.resize(k_count);
    out.device_energy_j.resize(k_count);

    std::vector<double> dev_x(k_count), dev_y(k_count), hov_x(k_count), hov_y(k_count), range(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        const std::size_t cell = scn.partition.cell_of_device[k];
        dev_x[k] = scn.devices[k].pos.x;
        dev_y[k] = scn.devices[k].pos.y;
        hov_x[k] = x.hover_x[cell];
        hov_y[k] = x.hover_y[cell];
    }
    kernels::slant_ranges(dev_x, dev_y, hov_x, hov_y, scn.altitude_m * scn.altitude_m, range);

    double min_rate = std::numeric_limits<double>::infinity();
    double energy_sum = 0.0;
    double time_sum = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
        const double theta = elevation_angle_deg(range[k], scn.altitude_m);
        const double gain = average_pathloss(range[k], theta, scn.channel);
        const double rate = transmit_rate(x.powers[k], gain, scn.channel, true);
        out.rate_bps[k] = rate;
        if (!(rate > 0.0) || !std::isfinite(rate)) {
            out.feasible = false;
            continue;
        }
        const UploadCost cost = device_energy(x.powers[k], scn.devices[k].data_bits, rate);
        out.upload_time_s[k] = cost.time_s;
        out.device_energy_j[k] = cost.energy_j;
        min_rate = std::min(min_rate, rate);
        energy_sum += cost.energy_j;
        time_sum += cost.time_s;
    }

    out.segments = path_segments(x, scn);
    out.hover_time_s = time_sum;
    out.hover_energy_j = hover_energy(time_sum, scn.uav_power);
    out.movement_energy_j = movement_energy(out.segments, scn.uav_power);

    if (!out.feasible) {
        out.objectives = ObjectiveVector::infeasible();
    } else {
        out.objectives = {-min_rate, energy_sum, out.hover_energy_j + out.movement_energy_j};
    }
    return out;
}

ObjectiveVector evaluate_objectives(const Scenario& scn, const SolutionVector& x) {
    return evaluate_detailed(scn, x).objectives;
}

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw std::invalid_argument(field + ": " + what);
}

}  // namespace

void validate_scenario(const Scenario& scn) {
    const auto& ch = scn.channel;
    require(ch.env_c > 0, "channel.env_c", "must be positive");
    require(ch.env_b > 0, "channel.env_b", "must be positive");
    require(ch.beta0 > 0, "channel.beta0", "must be positive");
    require(ch.mu0 > 0 && ch.mu0 <= 1, "channel.mu0", "must lie in (0, 1]");
    require(ch.alpha_los > 0, "channel.alpha_los", "must be positive");
    require(ch.alpha_nlos >= ch.alpha_los, "channel.alpha_nlos", "must be >= alpha_los");
    require(ch.bandwidth_hz > 0, "channel.bandwidth_hz", "must be positive");
    require(ch.noise_w > 0, "channel.noise_w", "must be positive");

    const auto& up = scn.uav_power;
    require(up.p0_w > 0, "uav_power.p0_w", "must be positive");
    require(up.pi_w > 0, "uav_power.pi_w", "must be positive");
    require(up.u_tip > 0, "uav_power.u_tip", "must be positive");
    require(up.v0 > 0, "uav_power.v0", "must be positive");
    require(up.rotor_area > 0, "uav_power.rotor_area", "must be positive");
    require(up.rho > 0, "uav_power.rho", "must be positive");
    require(up.d0 >= 0, "uav_power.d0", "must be non-negative");
    require(up.s >= 0, "uav_power.s", "must be non-negative");
    require(std::abs(up.omega * up.rotor_radius - up.u_tip) <= 0.01 * up.u_tip, "uav_power.u_tip",
            "must match omega * rotor_radius within 1%");

    require(scn.area.x_min < scn.area.x_max, "area", "x_min must be < x_max");
    require(scn.area.y_min < scn.area.y_max, "area", "y_min must be < y_max");
    require(scn.altitude_m > 0, "altitude_m", "must be positive");
    require(scn.num_hovers >= 1, "num_hovers", "must be >= 1");
    require(scn.power_bounds.lo >= 0 && scn.power_bounds.lo < scn.power_bounds.hi, "power_bounds",
            "must satisfy 0 <= lo < hi");
    require(scn.speed_bounds.lo > 0 && scn.speed_bounds.lo < scn.speed_bounds.hi, "speed_bounds",
            "must satisfy 0 < lo < hi");
    require(!scn.devices.empty(), "devices", "at least one device required");
    require(scn.area.contains(scn.start_pos), "start", "must lie inside the area");
    require(scn.area.contains(scn.end_pos), "end", "must lie inside the area");
    for (const auto& d : scn.devices) {
        require(scn.area.contains(d.pos), "devices[" + std::to_string(d.id) + "]", "position outside the area");
        require(d.data_bits > 0, "devices[" + std::to_string(d.id) + "]", "data_bits must be positive");
    }
    require(scn.partition.num_cells() == scn.num_hovers, "partition", "cell count must equal num_hovers");
    require(scn.partition.cell_of_device.size() == scn.devices.size(), "partition", "must cover every device");
}

}  // namespace uavdc
