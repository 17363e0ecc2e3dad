#include "nlscan/testing.hpp"

#include <nlohmann/json.hpp>

namespace nlscan {

std::string NullDistribution::describe() const {
    switch (family) {
        case NullFamily::ChiSquared:
            return "chi-squared(" + std::to_string(static_cast<int>(df1)) + ")";
        case NullFamily::FRatio:
            return "F(" + std::to_string(static_cast<int>(df1)) + ", " +
                   std::to_string(static_cast<int>(df2)) + ")";
        case NullFamily::StandardNormal:
            return "standard normal";
        case NullFamily::DickeyFuller:
            return "Dickey-Fuller (simulated critical values)";
    }
    return "unknown";
}

std::string to_json(const TestOutcome& o) {
    nlohmann::ordered_json j;
    j["test_name"] = o.test_name;
    j["statistic"] = o.statistic;
    j["null_distribution"] = o.null_distribution.describe();
    if (o.p_value) j["p_value"] = *o.p_value;
    if (o.critical_value_5pct) j["critical_value_5pct"] = *o.critical_value_5pct;
    j["reject_at_5pct"] = o.reject_at_5pct;
    return j.dump();
}

}  // namespace nlscan
