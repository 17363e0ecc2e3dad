#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlscan/armodel.hpp"
#include "nlscan/testing.hpp"

namespace nlscan {

struct BatteryConfig {
    std::vector<std::size_t> lags{5, 15, 20};
    std::vector<std::size_t> bds_dims{2, 3, 4};
    std::vector<double> bds_eps_multiples{0.5, 1.0, 1.5};  // paired with bds_dims
    double alpha = 0.05;

    void validate() const;  // throws std::invalid_argument
};

struct BatteryCell {
    std::string test;            // mcleod_li, tsay, arch_lm, bds
    std::size_t lag = 0;         // lag-based tests
    std::size_t m = 0;           // bds embedding dimension
    double eps_multiple = 0.0;   // bds epsilon as a multiple of sd
    std::optional<TestOutcome> outcome;
    std::string error;           // set when the cell failed
};

struct BatteryReport {
    std::vector<BatteryCell> cells;
};

// Ljung-Box on the autocorrelations of the squared residuals; chi-square
// with `lag` df. Throws on degenerate squared series.
TestOutcome mcleod_li(std::span<const double> resid, std::size_t lag);

// Tsay's F test for quadratic serial dependence. Collinear cross-product
// columns are dropped and the degrees of freedom adjusted.
TestOutcome tsay(std::span<const double> resid, std::size_t lag);

// Engle's LM test: (n - lag) R^2 from regressing squared residuals on their
// own lags; chi-square with `lag` df.
TestOutcome arch_lm(std::span<const double> resid, std::size_t lag);

// BDS test with absolute epsilon; standard normal null, two-sided p-value.
TestOutcome bds(std::span<const double> resid, std::size_t m, double eps);

BatteryReport run_battery(const ResidualSeries& resid, const BatteryConfig& config);

std::string to_json(const BatteryReport& report);
std::string to_csv(const BatteryReport& report);

}  // namespace nlscan
