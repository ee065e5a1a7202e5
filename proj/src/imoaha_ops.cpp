#include "uavdc/imoaha_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace uavdc {

namespace {

// Keeps the chaotic state strictly inside the unit interval.
constexpr double kStateEps = 1e-12;

}  // namespace

void validate_tent(const TentParams& tp) {
    if (!(tp.d > 0.0 && tp.d < 1.0)) throw std::invalid_argument("tent.d must lie in (0, 1)");
    if (!(tp.e > 0.0)) throw std::invalid_argument("tent.e must be positive");
    if (!(tp.x0 > 0.0 && tp.x0 < 1.0)) throw std::invalid_argument("tent.x0 must lie in (0, 1)");
    const double upper_fixed = tp.e / (1.0 + tp.e);
    if (tp.e * (1.0 - tp.d) > 1.0 + 1e-9) throw std::invalid_argument("tent: e * (1 - d) must not exceed 1");
    if (upper_fixed >= tp.d && std::abs(tp.x0 - upper_fixed) < 1e-12)
        throw std::invalid_argument("tent.x0 sits on a fixed point of the map");
}

double tent_map(double x, const TentParams& tp) { return x < tp.d ? x / tp.d : tp.e * (1.0 - x); }

TentDraw tent_next(double x, const TentParams& tp, double u) {
    const double t = tent_map(x, tp);
    return {std::min(t, 1.0) * u, std::clamp(t, kStateEps, 1.0 - kStateEps)};
}

TentDraw tent_next(double x, const TentParams& tp, Rng& rng) { return tent_next(x, tp, uniform01(rng)); }

double ChaoticChain::next_sample(Rng& rng) {
    const TentDraw d = tent_next(state, params, rng);
    state = d.next;
    return d.sample;
}

SolutionVector hybrid_init(const Bounds& b, std::size_t num_hovers, std::size_t num_devices, ChaoticChain& chain,
                           Rng& rng) {
    SolutionVector x;
    auto fill = [&](std::vector<double>& v, std::size_t n, const Interval& box) {
        v.resize(n);
        for (auto& g : v) g = box.lo + chain.next_sample(rng) * (box.hi - box.lo);
    };
    fill(x.hover_x, num_hovers, b.hover_x);
    fill(x.hover_y, num_hovers, b.hover_y);
    fill(x.speeds, num_hovers, b.speed);
    fill(x.powers, num_devices, b.power);
    x.visit_seq.resize(num_hovers);
    std::iota(x.visit_seq.begin(), x.visit_seq.end(), std::size_t{0});
    return x;
}

double cauchy_factor(double r) { return 1.0 / (std::numbers::pi * (r * r + 1.0)); }

double cauchy_factor(Rng& rng) { return cauchy_factor(uniform01(rng)); }

std::vector<double> gene_block(const SolutionVector& x, GeneBlock block) {
    if (block == GeneBlock::speeds) return x.speeds;
    std::vector<double> g(x.hover_x);
    g.insert(g.end(), x.hover_y.begin(), x.hover_y.end());
    return g;
}

void set_gene_block(SolutionVector& x, GeneBlock block, std::span<const double> genes) {
    const std::size_t u = x.hover_x.size();
    if (block == GeneBlock::speeds) {
        if (genes.size() != u) throw std::invalid_argument("set_gene_block: speed block length mismatch");
        std::copy(genes.begin(), genes.end(), x.speeds.begin());
        return;
    }
    if (genes.size() != 2 * u) throw std::invalid_argument("set_gene_block: position block length mismatch");
    std::copy_n(genes.begin(), u, x.hover_x.begin());
    std::copy_n(genes.begin() + static_cast<std::ptrdiff_t>(u), u, x.hover_y.begin());
}

std::vector<double> cauchy_perturb(std::span<const double> source, double e, std::span<const double> factors) {
    if (factors.size() != source.size()) throw std::invalid_argument("cauchy_perturb: factor count mismatch");
    std::vector<double> out(source.size());
    for (std::size_t j = 0; j < source.size(); ++j) out[j] = source[j] + source[j] * e * factors[j];
    return out;
}

std::vector<double> cauchy_mutate(std::span<const double> component, const Archive& arch, GeneBlock block,
                                  const CauchyParams& cp, Rng& rng) {
    if (arch.empty()) return {component.begin(), component.end()};
    const auto& member = arch.entries[uniform_index(rng, arch.size())].solution;
    const std::vector<double> source = gene_block(member, block);
    if (source.size() != component.size()) throw std::invalid_argument("cauchy_mutate: block length mismatch");
    const double e = block == GeneBlock::positions ? cp.e_pos_max * uniform01(rng) : cp.e_speed;
    std::vector<double> factors(source.size());
    for (auto& f : factors) f = cauchy_factor(rng);
    return cauchy_perturb(source, e, factors);
}

std::vector<std::size_t> swap_positions(std::vector<std::size_t> seq, std::size_t i, std::size_t j) {
    if (i >= seq.size() || j >= seq.size()) throw std::out_of_range("swap_positions: index out of range");
    if (seq[i] != seq[j]) std::swap(seq[i], seq[j]);
    return seq;
}

std::vector<std::size_t> discrete_mutation(std::vector<std::size_t> seq, Rng& rng) {
    if (seq.size() < 2) return seq;
    const std::size_t i = uniform_index(rng, seq.size());
    const std::size_t j = uniform_index(rng, seq.size());
    return swap_positions(std::move(seq), i, j);
}

}  // namespace uavdc
