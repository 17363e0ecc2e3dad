#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "nlscan/testing.hpp"

namespace nlscan {

// Left-tail critical values of the RALS statistic under a driftless Gaussian
// random-walk null, estimated by simulation.
struct RalsCriticalValues {
    std::size_t n = 0;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    double pct1 = 0.0;
    double pct5 = 0.0;
    double pct10 = 0.0;
};

// 5% asymptotic critical value for the intercept-only ADF regression.
inline constexpr double kAdfCritical5pct = -2.87;

// Schwert's rule, the usual default for the augmentation lag bound.
std::size_t default_adf_max_lag(std::size_t n);

// ADF regression with intercept, no trend; augmentation order chosen by BIC
// over 0..max_lag. Statistic is the t-ratio of the level coefficient.
TestOutcome adf(std::span<const double> series, std::size_t max_lag);

// RALS statistic alone (t-ratio of the level coefficient in the
// residual-moment-augmented ADF regression).
double rals_statistic(std::span<const double> series, std::size_t max_lag);

TestOutcome rals(std::span<const double> series, std::size_t max_lag,
                 const RalsCriticalValues& critical_values);

// Simulates the RALS null distribution; deterministic for a fixed seed.
// Throws when replications < 1000.
RalsCriticalValues critical_values_rals(std::size_t n, std::size_t replications,
                                        std::uint64_t seed, std::size_t max_lag = 4);

std::string to_csv(const RalsCriticalValues& table);

}  // namespace nlscan
