#pragma once

#include <optional>
#include <string>

namespace nlscan {

enum class NullFamily { ChiSquared, FRatio, StandardNormal, DickeyFuller };

struct NullDistribution {
    NullFamily family = NullFamily::ChiSquared;
    double df1 = 0.0;  // chi-square df, or F numerator df
    double df2 = 0.0;  // F denominator df

    std::string describe() const;
};

// Shared result record for every hypothesis test in the battery.
struct TestOutcome {
    std::string test_name;
    double statistic = 0.0;
    NullDistribution null_distribution;
    std::optional<double> p_value;            // absent for critical-value-only tests
    std::optional<double> critical_value_5pct;
    bool reject_at_5pct = false;
};

std::string to_json(const TestOutcome& outcome);

}  // namespace nlscan
