#include "uavdc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace uavdc::kernels {

namespace {

constexpr KernelTable kScalar{&scalar::dominance_row, &scalar::scaled_sq_distances, &scalar::slant_ranges};
constexpr KernelTable kAvx2{&avx2::dominance_row, &avx2::scaled_sq_distances, &avx2::slant_ranges};

bool host_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{&table_for(detected_isa())};
    return slot;
}

}  // namespace

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2: return avx2::compiled() && host_has_avx2();
    }
    return false;
}

Isa detected_isa() { return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active_isa() { return active_slot().load() == &kAvx2 ? Isa::avx2 : Isa::scalar; }

void set_isa(Isa isa) {
    if (!isa_supported(isa)) throw std::invalid_argument("kernel ISA not supported on this host: " + std::string(isa_name(isa)));
    active_slot().store(&table_for(isa));
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "auto") return detected_isa();
    return std::nullopt;
}

const KernelTable& table_for(Isa isa) { return isa == Isa::avx2 ? kAvx2 : kScalar; }

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

void dominance_row(const double* p, ObjectiveColumns q, std::span<std::uint8_t> out) {
    if (out.size() < q.size()) throw std::invalid_argument("dominance_row: output too small");
    active().dominance_row(p, q, out.data());
}

void scaled_sq_distances(const double* p, ObjectiveColumns q, const double* scale, std::span<double> out) {
    if (out.size() < q.size()) throw std::invalid_argument("scaled_sq_distances: output too small");
    active().scaled_sq_distances(p, q, scale, out.data());
}

void slant_ranges(std::span<const double> dev_x, std::span<const double> dev_y, std::span<const double> hov_x,
                  std::span<const double> hov_y, double altitude_sq, std::span<double> out) {
    const std::size_t n = dev_x.size();
    if (dev_y.size() != n || hov_x.size() != n || hov_y.size() != n || out.size() < n)
        throw std::invalid_argument("slant_ranges: mismatched lengths");
    active().slant_ranges(dev_x.data(), dev_y.data(), hov_x.data(), hov_y.data(), altitude_sq, n, out.data());
}

}  // namespace uavdc::kernels
