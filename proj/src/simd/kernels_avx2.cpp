// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only called after a CPUID check.

#include "kernels_internal.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace cantor_beam::simd {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    const __m128d swapped = _mm_unpackhi_pd(pair, pair);
    return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void horner_avx2(const double* coeffs, std::size_t n_coeffs, const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = n_coeffs; k-- > 0;) {
            acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(coeffs[k]));
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = n_coeffs; k-- > 0;) acc = std::fma(acc, x[i], coeffs[k]);
        out[i] = acc;
    }
}

void hat_avx2(double apex, double inv_half_width, const double* x, double* out, std::size_t n) {
    const __m256d apex_v = _mm256_set1_pd(apex);
    const __m256d inv_v = _mm256_set1_pd(inv_half_width);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dist = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), apex_v));
        const __m256d value = _mm256_sub_pd(one, _mm256_mul_pd(dist, inv_v));
        _mm256_storeu_pd(out + i, _mm256_max_pd(value, zero));
    }
    for (; i < n; ++i) out[i] = std::max(0.0, 1.0 - std::abs(x[i] - apex) * inv_half_width);
}

double trapezoid_abs_diff_avx2(const double* x, const double* a, const double* b, std::size_t n) {
    if (n < 2) return 0.0;
    // Panel i spans [x[i], x[i+1]].
    const std::size_t panels = n - 1;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= panels; i += 4) {
        const __m256d width = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
        const __m256d left = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        const __m256d right = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i + 1), _mm256_loadu_pd(b + i + 1)));
        acc = _mm256_fmadd_pd(width, _mm256_add_pd(left, right), acc);
    }
    double sum = hsum(acc);
    for (; i < panels; ++i) {
        sum += (x[i + 1] - x[i]) * (std::abs(a[i] - b[i]) + std::abs(a[i + 1] - b[i + 1]));
    }
    return 0.5 * sum;
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{dot_avx2, horner_avx2, hat_avx2, trapezoid_abs_diff_avx2};
    return table;
}

}  // namespace cantor_beam::simd
