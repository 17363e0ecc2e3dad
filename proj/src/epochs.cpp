#include "nlscan/epochs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "nlscan/dist.hpp"
#include "nlscan/kernels.hpp"
#include "nlscan/rng.hpp"

namespace nlscan {

void WindowSpec::validate() const {
    if (!(c > 0.0 && c < 0.5)) throw std::invalid_argument("window spec: c must be in (0, 0.5)");
    if (n < 8) throw std::invalid_argument("window spec: n must be >= 8 so that L >= 2");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("window spec: alpha must be in (0,1)");
}

std::size_t WindowSpec::lag_count() const {
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), c)));
}

std::size_t WindowSpec::dof() const {
    const std::size_t l = lag_count();
    return l * (l - 1) / 2;
}

std::vector<std::span<const double>> partition_windows(std::span<const double> resid,
                                                       const WindowSpec& spec) {
    spec.validate();
    if (resid.size() < spec.n)
        throw std::invalid_argument("partition_windows: series shorter than one window");
    std::vector<std::span<const double>> windows;
    windows.reserve(resid.size() / spec.n);
    for (std::size_t start = 0; start + spec.n <= resid.size(); start += spec.n)
        windows.push_back(resid.subspan(start, spec.n));
    return windows;
}

double bicorrelation(std::span<const double> z, std::size_t r, std::size_t s) {
    if (!(r > 0 && r < s)) throw std::invalid_argument("bicorrelation: requires 0 < r < s");
    if (s >= z.size()) throw std::invalid_argument("bicorrelation: lag s exceeds window");
    return kernels::triple_lag_sum(z, r, s) / static_cast<double>(z.size() - s);
}

namespace {

double raw_h_sum(std::span<const double> z, std::size_t lags) {
    const std::size_t n = z.size();
    double h = 0.0;
    for (std::size_t s = 2; s <= lags; ++s) {
        for (std::size_t r = 1; r < s; ++r) {
            const double c = kernels::triple_lag_sum(z, r, s) / static_cast<double>(n - s);
            h += static_cast<double>(n - s) * c * c;
        }
    }
    return h;
}

constexpr std::size_t kHNullReps = 200000;
constexpr std::uint64_t kHNullSeed = 0x4863616cULL;

// Sorted raw H draws under the standardized Gaussian white-noise null.
const std::vector<double>& h_null_table(std::size_t n, std::size_t lags) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find({n, lags});
    if (it == tables.end()) {
        std::vector<double> draws;
        draws.reserve(kHNullReps);
        std::vector<double> x(n);
        for (std::size_t rep = 0; rep < kHNullReps; ++rep) {
            Rng rng = Rng::substream(kHNullSeed, rep);
            for (auto& v : x) v = rng.next_gaussian();
            draws.push_back(raw_h_sum(standardize(x), lags));
        }
        std::sort(draws.begin(), draws.end());
        it = tables.emplace(std::make_pair(n, lags), std::move(draws)).first;
    }
    return it->second;
}

}  // namespace

double h_null_pvalue(double h_raw, std::size_t n, std::size_t lags) {
    if (lags < 2) throw std::invalid_argument("h_null_pvalue: need at least two lags");
    if (n <= lags) throw std::invalid_argument("h_null_pvalue: window shorter than lag span");
    const auto& table = h_null_table(n, lags);
    const auto above = table.end() - std::upper_bound(table.begin(), table.end(), h_raw);
    return (static_cast<double>(above) + 0.5) / (static_cast<double>(table.size()) + 1.0);
}

WindowResult h_statistic(std::span<const double> window, const WindowSpec& spec) {
    spec.validate();
    const std::size_t n = window.size();
    if (n < spec.n) throw std::invalid_argument("h_statistic: window shorter than spec");

    WindowResult result;
    result.n = n;
    // L from the actual window length (identical to spec.lag_count() for
    // partitioned windows).
    result.lag_count = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), spec.c)));
    result.df = result.lag_count * (result.lag_count - 1) / 2;

    std::vector<double> z;
    try {
        z = standardize(window);
    } catch (const std::exception&) {
        result.degenerate = true;
        result.p_value = 1.0;
        return result;
    }

    result.h_raw = raw_h_sum(z, result.lag_count);
    result.p_value = h_null_pvalue(result.h_raw, n, result.lag_count);
    result.h_statistic =
        dist::chi_squared_quantile(1.0 - result.p_value, static_cast<double>(result.df));
    result.significant = result.p_value < spec.alpha;
    return result;
}

namespace {

ScanReport scan_residuals(const ResidualSeries& resid, const WindowSpec& spec,
                          const std::string& instrument_id) {
    ScanReport report;
    report.instrument_id = instrument_id;
    report.ar_order_used = resid.source_order;

    auto windows = partition_windows(resid.values, spec);
    report.discarded_tail = resid.values.size() - windows.size() * spec.n;
    report.windows.reserve(windows.size());

    const bool dated = resid.source_dates.size() == resid.values.size();
    for (std::size_t i = 0; i < windows.size(); ++i) {
        WindowResult w = h_statistic(windows[i], spec);
        w.index = i;
        if (dated) {
            w.start_date = resid.source_dates[i * spec.n];
            w.end_date = resid.source_dates[i * spec.n + spec.n - 1];
        }
        if (!w.degenerate) {
            ++report.total_windows;
            if (w.significant) ++report.significant_windows;
        }
        report.windows.push_back(std::move(w));
    }
    report.significant_fraction =
        report.total_windows == 0
            ? 0.0
            : static_cast<double>(report.significant_windows) /
                  static_cast<double>(report.total_windows);
    return report;
}

}  // namespace

ScanReport scan(const ReturnSeries& returns, const WindowSpec& spec, std::size_t p_max) {
    return scan_residuals(prewhiten(returns, p_max), spec, returns.instrument_id);
}

ScanReport scan_values(std::span<const double> returns, const WindowSpec& spec,
                       std::size_t p_max) {
    return scan_residuals(prewhiten(returns, p_max), spec, "");
}

std::string to_json(const ScanReport& report) {
    nlohmann::ordered_json j;
    j["instrument_id"] = report.instrument_id;
    j["ar_order_used"] = report.ar_order_used;
    j["total_windows"] = report.total_windows;
    j["significant_windows"] = report.significant_windows;
    j["significant_fraction"] = report.significant_fraction;
    j["discarded_tail"] = report.discarded_tail;
    nlohmann::ordered_json windows = nlohmann::ordered_json::array();
    for (const auto& w : report.windows) {
        nlohmann::ordered_json wj;
        wj["index"] = w.index;
        if (w.start_date) wj["start_date"] = w.start_date->iso();
        if (w.end_date) wj["end_date"] = w.end_date->iso();
        wj["n"] = w.n;
        wj["L"] = w.lag_count;
        wj["df"] = w.df;
        wj["h_raw"] = w.h_raw;
        wj["h_statistic"] = w.h_statistic;
        wj["p_value"] = w.p_value;
        wj["significant"] = w.significant;
        if (w.degenerate) wj["degenerate"] = true;
        windows.push_back(std::move(wj));
    }
    j["windows"] = std::move(windows);
    return j.dump();
}

std::string to_csv(const ScanReport& report, bool us_dates) {
    std::ostringstream os;
    os << "index,start_date,end_date,h_statistic,p_value\n";
    for (const auto& w : report.windows) {
        if (!w.significant) continue;
        os << w.index << ',';
        if (w.start_date) os << (us_dates ? w.start_date->us() : w.start_date->iso());
        os << ',';
        if (w.end_date) os << (us_dates ? w.end_date->us() : w.end_date->iso());
        os << ',' << w.h_statistic << ',' << w.p_value << '\n';
    }
    return os.str();
}

}  // namespace nlscan
