// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "usc/kernels.hpp"

namespace usc::kernels::avx2 {
namespace {

// <abcd> -> a + b + c + d
double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

void displacements(std::span<const double> g, std::span<const double> omega, double x,
                   std::span<double> f) {
    const std::size_t n = g.size();
    const __m256d xx = _mm256_set1_pd(x);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d den = _mm256_add_pd(_mm256_loadu_pd(omega.data() + i), xx);
        _mm256_storeu_pd(f.data() + i, _mm256_div_pd(_mm256_loadu_pd(g.data() + i), den));
    }
    for (; i < n; ++i) f[i] = g[i] / (omega[i] + x);
}

double weighted_square_sum(std::span<const double> w, std::span<const double> g,
                           std::span<const double> omega, double x) {
    const std::size_t n = w.size();
    const __m256d xx = _mm256_set1_pd(x);
    // Two accumulators hide the FMA latency.
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d f0 = _mm256_div_pd(_mm256_loadu_pd(g.data() + i),
                                         _mm256_add_pd(_mm256_loadu_pd(omega.data() + i), xx));
        const __m256d f1 = _mm256_div_pd(_mm256_loadu_pd(g.data() + i + 4),
                                         _mm256_add_pd(_mm256_loadu_pd(omega.data() + i + 4), xx));
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w.data() + i), f0), f0, acc0);
        acc1 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w.data() + i + 4), f1), f1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d f0 = _mm256_div_pd(_mm256_loadu_pd(g.data() + i),
                                         _mm256_add_pd(_mm256_loadu_pd(omega.data() + i), xx));
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w.data() + i), f0), f0, acc0);
    }
    double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double f = g[i] / (omega[i] + x);
        acc += w[i] * f * f;
    }
    return acc;
}

PvSum pv_subtracted_sum(std::span<const double> w, std::span<const double> k,
                        std::span<const double> omega, std::span<const double> h,
                        double omega0, double k0, double c0, double eps) {
    const std::size_t n = w.size();
    const __m256d kk0 = _mm256_set1_pd(k0);
    const __m256d om0 = _mm256_set1_pd(omega0);
    const __m256d cc0 = _mm256_set1_pd(c0);
    const __m256d epsv = _mm256_set1_pd(eps);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);

    PvSum out;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(kk0, _mm256_loadu_pd(k.data() + i));
        const __m256d absd = _mm256_andnot_pd(sign_mask, d);
        const __m256d skip = _mm256_cmp_pd(absd, epsv, _CMP_LE_OQ);
        const __m256d pole = _mm256_div_pd(_mm256_loadu_pd(h.data() + i),
                                           _mm256_sub_pd(om0, _mm256_loadu_pd(omega.data() + i)));
        const __m256d term = _mm256_sub_pd(pole, _mm256_div_pd(cc0, d));
        const __m256d weighted = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), term);
        acc = _mm256_add_pd(acc, _mm256_blendv_pd(weighted, _mm256_setzero_pd(), skip));
        const int bits = _mm256_movemask_pd(skip);
        if (bits != 0) {
            for (int lane = 3; lane >= 0; --lane) {
                if (bits & (1 << lane)) {
                    out.skipped = static_cast<std::ptrdiff_t>(i) + lane;
                    break;
                }
            }
        }
    }
    out.sum = horizontal_sum(acc);
    for (; i < n; ++i) {
        const double d = k0 - k[i];
        if (std::abs(d) <= eps) {
            out.skipped = static_cast<std::ptrdiff_t>(i);
            continue;
        }
        out.sum += w[i] * (h[i] / (omega0 - omega[i]) - c0 / d);
    }
    return out;
}

}  // namespace usc::kernels::avx2
