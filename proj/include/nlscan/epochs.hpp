#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlscan/armodel.hpp"
#include "nlscan/series.hpp"

namespace nlscan {

struct WindowSpec {
    std::size_t n = 28;   // window length
    double c = 0.4;       // lag exponent, 0 < c < 0.5
    double alpha = 0.05;

    void validate() const;                 // throws std::invalid_argument
    std::size_t lag_count() const;         // L = floor(n^c)
    std::size_t dof() const;               // L(L-1)/2
};

struct WindowResult {
    std::size_t index = 0;
    std::optional<Date> start_date;
    std::optional<Date> end_date;
    std::size_t n = 0;
    std::size_t lag_count = 0;
    std::size_t df = 0;
    double h_raw = 0.0;        // sum of (n - s) C^2 over lag pairs
    double h_statistic = 0.0;  // h_raw mapped onto the chi-square scale
    double p_value = 1.0;
    bool significant = false;
    bool degenerate = false;  // zero-variance window, excluded from counts
};

struct ScanReport {
    std::string instrument_id;
    std::size_t ar_order_used = 0;
    std::size_t total_windows = 0;         // non-degenerate windows
    std::size_t significant_windows = 0;
    double significant_fraction = 0.0;
    std::vector<WindowResult> windows;     // all windows, degenerate included
    std::size_t discarded_tail = 0;
};

// Non-overlapping length-n slices from the start; the remainder is reported,
// not covered. Throws when the series is shorter than one window.
std::vector<std::span<const double>> partition_windows(std::span<const double> resid,
                                                       const WindowSpec& spec);

// Sample bicorrelation (n - s)^-1 sum_t z_t z_{t+r} z_{t+s}; requires 0 < r < s.
double bicorrelation(std::span<const double> z, std::size_t r, std::size_t s);

// Upper-tail probability of the raw H sum under the Gaussian white-noise
// null at window length n with the given lag count, read from a simulated
// reference table (deterministic, cached per (n, lags)). At short window
// lengths the asymptotic chi-square reference is visibly miscalibrated, so
// p-values come from this table instead.
double h_null_pvalue(double h_raw, std::size_t n, std::size_t lags);

// Standardizes the window, sums (n - s) C^2(r, s) over 0 < r < s <= L into
// h_raw, takes the p-value from the finite-sample null table, and reports
// h_statistic on the chi-square scale with L(L-1)/2 df (the chi-square
// quantile of the table p-value, so the null distribution of h_statistic is
// chi-square by construction). A zero-variance window is flagged degenerate
// instead of throwing.
WindowResult h_statistic(std::span<const double> window, const WindowSpec& spec);

// Full pipeline: pre-whiten, partition, test every window, aggregate.
ScanReport scan(const ReturnSeries& returns, const WindowSpec& spec, std::size_t p_max);
ScanReport scan_values(std::span<const double> returns, const WindowSpec& spec,
                       std::size_t p_max);

std::string to_json(const ScanReport& report);
std::string to_csv(const ScanReport& report, bool us_dates = false);

}  // namespace nlscan
