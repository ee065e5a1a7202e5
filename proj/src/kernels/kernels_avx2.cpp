#include "uavdc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define UAVDC_HAVE_AVX2_TU 1
#define UAVDC_AVX2 __attribute__((target("avx2")))
#endif

namespace uavdc::kernels::avx2 {

#ifdef UAVDC_HAVE_AVX2_TU

bool compiled() { return true; }

namespace {

// Lane bit masks from _mm256_movemask_pd, one lane per element.
UAVDC_AVX2 inline int lanes(__m256d m) { return _mm256_movemask_pd(m); }

}  // namespace

UAVDC_AVX2 void dominance_row(const double* p, ObjectiveColumns q, std::uint8_t* out) {
    const std::size_t n = q.size();
    const __m256d p0 = _mm256_set1_pd(p[0]);
    const __m256d p1 = _mm256_set1_pd(p[1]);
    const __m256d p2 = _mm256_set1_pd(p[2]);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(q.f0.data() + i);
        const __m256d b = _mm256_loadu_pd(q.f1.data() + i);
        const __m256d c = _mm256_loadu_pd(q.f2.data() + i);

        const __m256d p_le = _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(p0, a, _CMP_LE_OQ), _mm256_cmp_pd(p1, b, _CMP_LE_OQ)),
                                           _mm256_cmp_pd(p2, c, _CMP_LE_OQ));
        const __m256d p_lt = _mm256_or_pd(_mm256_or_pd(_mm256_cmp_pd(p0, a, _CMP_LT_OQ), _mm256_cmp_pd(p1, b, _CMP_LT_OQ)),
                                          _mm256_cmp_pd(p2, c, _CMP_LT_OQ));
        const __m256d q_le = _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(a, p0, _CMP_LE_OQ), _mm256_cmp_pd(b, p1, _CMP_LE_OQ)),
                                           _mm256_cmp_pd(c, p2, _CMP_LE_OQ));
        const __m256d q_lt = _mm256_or_pd(_mm256_or_pd(_mm256_cmp_pd(a, p0, _CMP_LT_OQ), _mm256_cmp_pd(b, p1, _CMP_LT_OQ)),
                                          _mm256_cmp_pd(c, p2, _CMP_LT_OQ));
        const __m256d eq = _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(a, p0, _CMP_EQ_OQ), _mm256_cmp_pd(b, p1, _CMP_EQ_OQ)),
                                         _mm256_cmp_pd(c, p2, _CMP_EQ_OQ));

        const int pd = lanes(_mm256_and_pd(p_le, p_lt));
        const int qd = lanes(_mm256_and_pd(q_le, q_lt));
        const int e = lanes(eq);
        for (int l = 0; l < 4; ++l) {
            out[i + l] = static_cast<std::uint8_t>(((pd >> l) & 1 ? kPDominates : 0) | ((qd >> l) & 1 ? kQDominates : 0) |
                                                   ((e >> l) & 1 ? kEqual : 0));
        }
    }
    if (i < n) {
        ObjectiveColumns tail{q.f0.subspan(i), q.f1.subspan(i), q.f2.subspan(i)};
        scalar::dominance_row(p, tail, out + i);
    }
}

UAVDC_AVX2 void scaled_sq_distances(const double* p, ObjectiveColumns q, const double* scale, double* out) {
    const std::size_t n = q.size();
    const __m256d p0 = _mm256_set1_pd(p[0]);
    const __m256d p1 = _mm256_set1_pd(p[1]);
    const __m256d p2 = _mm256_set1_pd(p[2]);
    const __m256d s0 = _mm256_set1_pd(scale[0]);
    const __m256d s1 = _mm256_set1_pd(scale[1]);
    const __m256d s2 = _mm256_set1_pd(scale[2]);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t0 = _mm256_mul_pd(_mm256_sub_pd(p0, _mm256_loadu_pd(q.f0.data() + i)), s0);
        const __m256d t1 = _mm256_mul_pd(_mm256_sub_pd(p1, _mm256_loadu_pd(q.f1.data() + i)), s1);
        const __m256d t2 = _mm256_mul_pd(_mm256_sub_pd(p2, _mm256_loadu_pd(q.f2.data() + i)), s2);
        const __m256d acc = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(t0, t0), _mm256_mul_pd(t1, t1)), _mm256_mul_pd(t2, t2));
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < n) {
        ObjectiveColumns tail{q.f0.subspan(i), q.f1.subspan(i), q.f2.subspan(i)};
        scalar::scaled_sq_distances(p, tail, scale, out + i);
    }
}

UAVDC_AVX2 void slant_ranges(const double* dev_x, const double* dev_y, const double* hov_x, const double* hov_y,
                             double altitude_sq, std::size_t n, double* out) {
    const __m256d h2 = _mm256_set1_pd(altitude_sq);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(hov_x + i), _mm256_loadu_pd(dev_x + i));
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(hov_y + i), _mm256_loadu_pd(dev_y + i));
        const __m256d r2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)), h2);
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(r2));
    }
    if (i < n) scalar::slant_ranges(dev_x + i, dev_y + i, hov_x + i, hov_y + i, altitude_sq, n - i, out + i);
}

#else

bool compiled() { return false; }

// Never selected: dispatch refuses avx2 when not compiled.
void dominance_row(const double* p, ObjectiveColumns q, std::uint8_t* out) { scalar::dominance_row(p, q, out); }
void scaled_sq_distances(const double* p, ObjectiveColumns q, const double* scale, double* out) {
    scalar::scaled_sq_distances(p, q, scale, out);
}
void slant_ranges(const double* dev_x, const double* dev_y, const double* hov_x, const double* hov_y,
                  double altitude_sq, std::size_t n, double* out) {
    scalar::slant_ranges(dev_x, dev_y, hov_x, hov_y, altitude_sq, n, out);
}

#endif

}  // namespace uavdc::kernels::avx2
