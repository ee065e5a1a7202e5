#pragma once

// Improvement operators: tent-map hybrid initialization, Cauchy mutation
// foraging and the swap-based discrete mutation of the visit sequence.
// Each randomized operator has a forced-draw overload for exact testing.

#include <cstddef>
#include <span>
#include <vector>

#include "uavdc/archive.hpp"
#include "uavdc/rng.hpp"
#include "uavdc/types.hpp"

namespace uavdc {

/// Tent map: x/d below the threshold d, e(1 - x) above it.
struct TentParams {
    double d = 0.7;
    double e = 10.0 / 3.0;
    double x0 = 0.6;
};

/// Throws std::invalid_argument for d outside (0,1), e <= 0, or x0 outside
/// (0,1) or on a fixed point of the map.
void validate_tent(const TentParams& tp);

double tent_map(double x, const TentParams& tp);

struct TentDraw {
    double sample = 0.0;  // tent(x) * u, the unit-interval gene fraction
    double next = 0.0;    // tent(x) clipped into (0, 1)
};

TentDraw tent_next(double x, const TentParams& tp, double u);
TentDraw tent_next(double x, const TentParams& tp, Rng& rng);

/// Evolving chaotic state shared across one initial population.
struct ChaoticChain {
    TentParams params;
    double state = 0.6;

    explicit ChaoticChain(TentParams tp) : params(tp), state(tp.x0) {}
    double next_sample(Rng& rng);
};

/// Continuous genes from the chaotic chain mapped onto each gene's own box;
/// visit sequence ascending (0, 1, ..., U-1).
SolutionVector hybrid_init(const Bounds& b, std::size_t num_hovers, std::size_t num_devices, ChaoticChain& chain,
                           Rng& rng);

struct CauchyParams {
    double scale_t = 1.0;
    double e_pos_max = 0.1;  // positions: E = e_pos_max * U(0,1), fresh per invocation
    double e_speed = 0.01;   // speeds: constant E
};

/// 1 / (pi (r^2 + 1)), range (1/(2 pi), 1/pi] for r in [0, 1).
double cauchy_factor(double r);
double cauchy_factor(Rng& rng);

enum class GeneBlock { positions, speeds };

/// Genes of `block` in a solution: positions = hover_x ++ hover_y.
std::vector<double> gene_block(const SolutionVector& x, GeneBlock block);
void set_gene_block(SolutionVector& x, GeneBlock block, std::span<const double> genes);

/// new_j = src_j + src_j * E * factor_j.
std::vector<double> cauchy_perturb(std::span<const double> source, double e, std::span<const double> factors);

/// Picks one archive member uniformly and perturbs its `block` genes. Returns
/// `component` unchanged when the archive is empty. The caller clamps.
std::vector<double> cauchy_mutate(std::span<const double> component, const Archive& arch, GeneBlock block,
                                  const CauchyParams& cp, Rng& rng);

/// Swaps positions i and j when their values differ.
std::vector<std::size_t> swap_positions(std::vector<std::size_t> seq, std::size_t i, std::size_t j);
/// Two independent uniform positions, then swap_positions.
std::vector<std::size_t> discrete_mutation(std::vector<std::size_t> seq, Rng& rng);

}  // namespace uavdc
