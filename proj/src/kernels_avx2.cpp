// AVX2 variants of the inner-loop kernels. Compiled with -mavx2 only on
// x86-64; selection happens at runtime via cpuid so the binary still runs
// on machines without AVX2.

#include "nlscan/kernels.hpp"

#if defined(NLSCAN_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace nlscan::kernels::detail {

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

namespace {

inline double hsum256(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

double sum_avx2(std::span<const double> x) {
    const double* p = x.data();
    std::size_t n = x.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
    double r = hsum256(acc);
    for (; i < n; ++i) r += p[i];
    return r;
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
    const double* pa = a.data();
    const double* pb = b.data();
    std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc);
    double r = hsum256(acc);
    for (; i < n; ++i) r += pa[i] * pb[i];
    return r;
}

double sum_sq_avx2(std::span<const double> x) {
    const double* p = x.data();
    std::size_t n = x.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double r = hsum256(acc);
    for (; i < n; ++i) r += p[i] * p[i];
    return r;
}

double autocov_sum_avx2(std::span<const double> x, std::size_t lag, double mean) {
    const double* p = x.data();
    std::size_t n = x.size() - lag;
    __m256d mu = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        __m256d a = _mm256_sub_pd(_mm256_loadu_pd(p + t), mu);
        __m256d b = _mm256_sub_pd(_mm256_loadu_pd(p + t + lag), mu);
        acc = _mm256_fmadd_pd(a, b, acc);
    }
    double r = hsum256(acc);
    for (; t < n; ++t) r += (p[t] - mean) * (p[t + lag] - mean);
    return r;
}

double triple_lag_sum_avx2(std::span<const double> z, std::size_t r, std::size_t s) {
    const double* p = z.data();
    std::size_t n = z.size() - s;
    __m256d acc = _mm256_setzero_pd();
    std::size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        __m256d a = _mm256_loadu_pd(p + t);
        __m256d b = _mm256_loadu_pd(p + t + r);
        __m256d c = _mm256_loadu_pd(p + t + s);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(a, b), c, acc);
    }
    double result = hsum256(acc);
    for (; t < n; ++t) result += p[t] * p[t + r] * p[t + s];
    return result;
}

std::size_t count_within_avx2(std::span<const double> x, double center, double eps) {
    const double* p = x.data();
    std::size_t n = x.size();
    __m256d c = _mm256_set1_pd(center);
    __m256d e = _mm256_set1_pd(eps);
    __m256d signmask = _mm256_set1_pd(-0.0);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_andnot_pd(signmask, _mm256_sub_pd(_mm256_loadu_pd(p + i), c));
        __m256d mask = _mm256_cmp_pd(d, e, _CMP_LE_OQ);
        count += static_cast<std::size_t>(__builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(mask))));
    }
    for (; i < n; ++i)
        if (std::abs(p[i] - center) <= eps) ++count;
    return count;
}

}  // namespace nlscan::kernels::detail

#endif  // NLSCAN_HAVE_AVX2
