#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the statistics modules. Every kernel
// has a scalar reference implementation and, on x86-64 with AVX2, a SIMD
// variant selected once at startup. Both variants must agree to within
// floating-point reassociation error; the test suite checks this.

namespace nlscan::kernels {

// Name of the active backend: "scalar" or "avx2".
std::string_view backend_name();

// Force a backend (for equivalence tests). Throws if unavailable.
void force_backend(std::string_view name);

double sum(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double sum_sq(std::span<const double> x);

// Sum of (x[t] - mean) * (x[t+lag] - mean) for t = 0 .. n-lag-1.
double autocov_sum(std::span<const double> x, std::size_t lag, double mean);

// Sum of z[t] * z[t+r] * z[t+s] for t = 0 .. n-s-1. Requires r <= s < n.
double triple_lag_sum(std::span<const double> z, std::size_t r, std::size_t s);

// Count of i with |x[i] - center| <= eps.
std::size_t count_within(std::span<const double> x, double center, double eps);

namespace detail {
double sum_scalar(std::span<const double> x);
double dot_scalar(std::span<const double> a, std::span<const double> b);
double sum_sq_scalar(std::span<const double> x);
double autocov_sum_scalar(std::span<const double> x, std::size_t lag, double mean);
double triple_lag_sum_scalar(std::span<const double> z, std::size_t r, std::size_t s);
std::size_t count_within_scalar(std::span<const double> x, double center, double eps);

bool avx2_available();
double sum_avx2(std::span<const double> x);
double dot_avx2(std::span<const double> a, std::span<const double> b);
double sum_sq_avx2(std::span<const double> x);
double autocov_sum_avx2(std::span<const double> x, std::size_t lag, double mean);
double triple_lag_sum_avx2(std::span<const double> z, std::size_t r, std::size_t s);
std::size_t count_within_avx2(std::span<const double> x, double center, double eps);
}  // namespace detail

}  // namespace nlscan::kernels
