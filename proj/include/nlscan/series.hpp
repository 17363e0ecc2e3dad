#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace nlscan {

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    static Date parse_iso(const std::string& text);  // YYYY-MM-DD
    std::string iso() const;
    std::string us() const;  // MM/DD/YY
};

struct PriceObservation {
    Date date;
    double price = 0.0;
};

// Dated positive prices, strictly increasing dates, at least two rows.
struct PriceSeries {
    std::string instrument_id;
    std::vector<PriceObservation> observations;
};

struct ReturnObservation {
    Date date;
    double value = 0.0;
};

// Log returns; element t carries the date of price t+1.
struct ReturnSeries {
    std::string instrument_id;
    std::vector<ReturnObservation> observations;
    std::size_t source_length = 0;

    std::vector<double> values() const;
};

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double stddev = 0.0;     // n-1 sample convention
    double skewness = 0.0;   // population third standardized moment
    double kurtosis = 0.0;   // raw population kurtosis, Gaussian = 3
    double jb_statistic = 0.0;
    double jb_pvalue = 0.0;
};

// Reads CSV with header `date,price` and ISO-8601 dates. Throws
// std::runtime_error with the offending line number on malformed rows,
// nonpositive prices, non-increasing dates, or fewer than two rows.
PriceSeries load_prices(std::istream& source, const std::string& instrument_id);

ReturnSeries log_returns(const PriceSeries& prices);

// Population-moment skewness/kurtosis and the Jarque-Bera statistic
// JB = n (S^2/6 + (K-3)^2/24), p-value from chi-square with 2 df.
// Requires n >= 4 and positive variance.
SummaryStats summary_stats(const ReturnSeries& returns);
SummaryStats summary_stats(const std::vector<double>& values);

std::string to_json(const SummaryStats& stats);

}  // namespace nlscan
