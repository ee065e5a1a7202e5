#include "uavdc/kernels.hpp"

#include <cmath>

namespace uavdc::kernels::scalar {

void dominance_row(const double* p, ObjectiveColumns q, std::uint8_t* out) {
    const std::size_t n = q.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = q.f0[i], b = q.f1[i], c = q.f2[i];
        const bool p_le = p[0] <= a && p[1] <= b && p[2] <= c;
        const bool p_lt = p[0] < a || p[1] < b || p[2] < c;
        const bool q_le = a <= p[0] && b <= p[1] && c <= p[2];
        const bool q_lt = a < p[0] || b < p[1] || c < p[2];
        const bool eq = a == p[0] && b == p[1] && c == p[2];
        out[i] = static_cast<std::uint8_t>((p_le && p_lt ? kPDominates : 0) | (q_le && q_lt ? kQDominates : 0) |
                                           (eq ? kEqual : 0));
    }
}

void scaled_sq_distances(const double* p, ObjectiveColumns q, const double* scale, double* out) {
    const std::size_t n = q.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double t0 = (p[0] - q.f0[i]) * scale[0];
        const double t1 = (p[1] - q.f1[i]) * scale[1];
        const double t2 = (p[2] - q.f2[i]) * scale[2];
        out[i] = t0 * t0 + t1 * t1 + t2 * t2;
    }
}

void slant_ranges(const double* dev_x, const double* dev_y, const double* hov_x, const double* hov_y,
                  double altitude_sq, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = hov_x[i] - dev_x[i];
        const double dy = hov_y[i] - dev_y[i];
        out[i] = std::sqrt(dx * dx + dy * dy + altitude_sq);
    }
}

}  // namespace uavdc::kernels::scalar
