#pragma once

// Air-to-ground channel, device upload energy and rotary-wing propulsion
// energy, plus evaluation of the three data-collection objectives.

#include <span>
#include <stdexcept>
#include <vector>

#include "uavdc/types.hpp"

namespace uavdc {

/// A device whose link rate is zero cannot finish its upload.
class InfeasibleLink : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

double distance(const Device& device, Point2 hover, double altitude_m);

/// (180/pi) * asin(H/d), in degrees.
double elevation_angle_deg(double distance_m, double altitude_m);

/// Sigmoid LoS model 1 / (1 + C exp(-B (theta - C))).
double los_probability(double theta_deg, const ChannelParams& ch);

/// LoS-probability weighted mix of the LoS and NLoS path gains.
double average_pathloss(double distance_m, double theta_deg, const ChannelParams& ch);

double transmit_rate(double power_w, double gain, const ChannelParams& ch, bool associated);

struct UploadCost {
    double time_s = 0.0;
    double energy_j = 0.0;
};

/// Throws InfeasibleLink when rate <= 0 and std::invalid_argument when data_bits <= 0.
UploadCost device_energy(double power_w, double data_bits, double rate_bps);

double propulsion_power(double speed_mps, const UavPowerParams& up);
double movement_energy(std::span<const PathSegment> segments, const UavPowerParams& up);
double hover_energy(double total_hover_time_s, const UavPowerParams& up);

struct EvaluationDetail {
    std::vector<double> rate_bps;        // per device
    std::vector<double> upload_time_s;   // per device
    std::vector<double> device_energy_j; // per device
    std::vector<PathSegment> segments;
    double hover_time_s = 0.0;
    double hover_energy_j = 0.0;
    double movement_energy_j = 0.0;
    bool feasible = true;
    ObjectiveVector objectives;
};

/// Full breakdown of one evaluation. Infeasible solutions (some device rate
/// zero) get the sentinel objectives.
EvaluationDetail evaluate_detailed(const Scenario& scn, const SolutionVector& x);

ObjectiveVector evaluate_objectives(const Scenario& scn, const SolutionVector& x);

/// Rejects scenarios whose constants or geometry break the model's
/// preconditions. Throws std::invalid_argument naming the field.
void validate_scenario(const Scenario& scn);

}  // namespace uavdc
