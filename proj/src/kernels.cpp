#include "nlscan/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace nlscan::kernels {

namespace detail {

double sum_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double sum_sq_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
}

double autocov_sum_scalar(std::span<const double> x, std::size_t lag, double mean) {
    double acc = 0.0;
    for (std::size_t t = 0; t + lag < x.size(); ++t)
        acc += (x[t] - mean) * (x[t + lag] - mean);
    return acc;
}

double triple_lag_sum_scalar(std::span<const double> z, std::size_t r, std::size_t s) {
    double acc = 0.0;
    for (std::size_t t = 0; t + s < z.size(); ++t)
        acc += z[t] * z[t + r] * z[t + s];
    return acc;
}

std::size_t count_within_scalar(std::span<const double> x, double center, double eps) {
    std::size_t count = 0;
    for (double v : x)
        if (std::abs(v - center) <= eps) ++count;
    return count;
}

#if !defined(NLSCAN_HAVE_AVX2)
// Stubs so callers can always link; dispatch never selects these.
bool avx2_available() { return false; }
double sum_avx2(std::span<const double>) { throw std::logic_error("avx2 not built"); }
double dot_avx2(std::span<const double>, std::span<const double>) {
    throw std::logic_error("avx2 not built");
}
double sum_sq_avx2(std::span<const double>) { throw std::logic_error("avx2 not built"); }
double autocov_sum_avx2(std::span<const double>, std::size_t, double) {
    throw std::logic_error("avx2 not built");
}
double triple_lag_sum_avx2(std::span<const double>, std::size_t, std::size_t) {
    throw std::logic_error("avx2 not built");
}
std::size_t count_within_avx2(std::span<const double>, double, double) {
    throw std::logic_error("avx2 not built");
}
#endif

}  // namespace detail

namespace {

struct Backend {
    std::string_view name;
    double (*sum)(std::span<const double>);
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*sum_sq)(std::span<const double>);
    double (*autocov_sum)(std::span<const double>, std::size_t, double);
    double (*triple_lag_sum)(std::span<const double>, std::size_t, std::size_t);
    std::size_t (*count_within)(std::span<const double>, double, double);
};

constexpr Backend kScalar{
    "scalar",
    detail::sum_scalar,
    detail::dot_scalar,
    detail::sum_sq_scalar,
    detail::autocov_sum_scalar,
    detail::triple_lag_sum_scalar,
    detail::count_within_scalar,
};

#if defined(NLSCAN_HAVE_AVX2)
constexpr Backend kAvx2{
    "avx2",
    detail::sum_avx2,
    detail::dot_avx2,
    detail::sum_sq_avx2,
    detail::autocov_sum_avx2,
    detail::triple_lag_sum_avx2,
    detail::count_within_avx2,
};
#endif

const Backend* pick_default() {
#if defined(NLSCAN_HAVE_AVX2)
    if (detail::avx2_available()) return &kAvx2;
#endif
    return &kScalar;
}

const Backend* g_backend = pick_default();

}  // namespace

std::string_view backend_name() { return g_backend->name; }

void force_backend(std::string_view name) {
    if (name == "scalar") {
        g_backend = &kScalar;
        return;
    }
#if defined(NLSCAN_HAVE_AVX2)
    if (name == "avx2" && detail::avx2_available()) {
        g_backend = &kAvx2;
        return;
    }
#endif
    throw std::invalid_argument("unknown or unavailable kernel backend: " + std::string(name));
}

double sum(std::span<const double> x) { return g_backend->sum(x); }

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    return g_backend->dot(a, b);
}

double sum_sq(std::span<const double> x) { return g_backend->sum_sq(x); }

double autocov_sum(std::span<const double> x, std::size_t lag, double mean) {
    if (lag >= x.size()) return 0.0;
    return g_backend->autocov_sum(x, lag, mean);
}

double triple_lag_sum(std::span<const double> z, std::size_t r, std::size_t s) {
    if (r > s || s >= z.size()) throw std::invalid_argument("triple_lag_sum: requires r <= s < n");
    return g_backend->triple_lag_sum(z, r, s);
}

std::size_t count_within(std::span<const double> x, double center, double eps) {
    return g_backend->count_within(x, center, eps);
}

}  // namespace nlscan::kernels
