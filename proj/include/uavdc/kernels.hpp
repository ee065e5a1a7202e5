#pragma once

// Data-parallel inner loops used by the model and the Pareto machinery.
// Every kernel has a scalar reference and an AVX2 variant; the variants are
// required to produce bit-identical outputs (no FMA contraction, same
// operation order per lane), so the dispatch choice never changes results.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace uavdc::kernels {

enum class Isa { scalar, avx2 };

/// Structure-of-arrays view of n objective vectors.
struct ObjectiveColumns {
    std::span<const double> f0;
    std::span<const double> f1;
    std::span<const double> f2;
    std::size_t size() const { return f0.size(); }
};

/// Relation codes written by dominance_row; bits may combine only as listed.
inline constexpr std::uint8_t kPDominates = 1;  // p dominates q_i
inline constexpr std::uint8_t kQDominates = 2;  // q_i dominates p
inline constexpr std::uint8_t kEqual = 4;       // p == q_i componentwise

struct KernelTable {
    void (*dominance_row)(const double* p, ObjectiveColumns q, std::uint8_t* out);
    void (*scaled_sq_distances)(const double* p, ObjectiveColumns q, const double* scale, double* out);
    void (*slant_ranges)(const double* dev_x, const double* dev_y, const double* hov_x, const double* hov_y,
                         double altitude_sq, std::size_t n, double* out);
};

namespace scalar {
void dominance_row(const double* p, ObjectiveColumns q, std::uint8_t* out);
void scaled_sq_distances(const double* p, ObjectiveColumns q, const double* scale, double* out);
void slant_ranges(const double* dev_x, const double* dev_y, const double* hov_x, const double* hov_y,
                  double altitude_sq, std::size_t n, double* out);
}  // namespace scalar

namespace avx2 {
bool compiled();
void dominance_row(const double* p, ObjectiveColumns q, std::uint8_t* out);
void scaled_sq_distances(const double* p, ObjectiveColumns q, const double* scale, double* out);
void slant_ranges(const double* dev_x, const double* dev_y, const double* hov_x, const double* hov_y,
                  double altitude_sq, std::size_t n, double* out);
}  // namespace avx2

bool isa_supported(Isa isa);
Isa detected_isa();
Isa active_isa();
/// Throws std::invalid_argument if the host cannot run `isa`.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

const KernelTable& table_for(Isa isa);
const KernelTable& active();

// Convenience wrappers over the active table.
void dominance_row(const double* p, ObjectiveColumns q, std::span<std::uint8_t> out);
void scaled_sq_distances(const double* p, ObjectiveColumns q, const double* scale, std::span<double> out);
void slant_ranges(std::span<const double> dev_x, std::span<const double> dev_y, std::span<const double> hov_x,
                  std::span<const double> hov_y, double altitude_sq, std::span<double> out);

}  // namespace uavdc::kernels
