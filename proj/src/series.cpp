#include "nlscan/series.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nlscan/dist.hpp"
#include "nlscan/kernels.hpp"

namespace nlscan {

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap(y)) return 29;
    return d[m - 1];
}

}  // namespace

Date Date::parse_iso(const std::string& text) {
    Date d;
    char extra;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &d.year, &d.month, &d.day, &extra) != 3 ||
        text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw std::runtime_error("invalid date '" + text + "', expected YYYY-MM-DD");
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month))
        throw std::runtime_error("invalid calendar date '" + text + "'");
    return d;
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::string Date::us() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d/%02d/%02d", month, day, year % 100);
    return buf;
}

std::vector<double> ReturnSeries::values() const {
    std::vector<double> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.value);
    return out;
}

PriceSeries load_prices(std::istream& source, const std::string& instrument_id) {
    PriceSeries series;
    series.instrument_id = instrument_id;

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(source, line)) throw std::runtime_error("no data rows: file is empty");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,price")
        throw std::runtime_error("line 1: expected header 'date,price', got '" + line + "'");

    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("line " + std::to_string(line_no) + ": missing comma");
        PriceObservation obs;
        try {
            obs.date = Date::parse_iso(line.substr(0, comma));
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
        std::size_t consumed = 0;
        const std::string price_text = line.substr(comma + 1);
        try {
            obs.price = std::stod(price_text, &consumed);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": malformed price '" +
                                     price_text + "'");
        }
        if (consumed != price_text.size() || !std::isfinite(obs.price))
            throw std::runtime_error("line " + std::to_string(line_no) + ": malformed price '" +
                                     price_text + "'");
        if (obs.price <= 0.0)
            throw std::runtime_error("nonpositive price at line " + std::to_string(line_no));
        if (!series.observations.empty() && obs.date <= series.observations.back().date)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": duplicate or decreasing date " + obs.date.iso());
        series.observations.push_back(obs);
    }
    if (series.observations.size() < 2)
        throw std::runtime_error("no data rows: need at least 2 price observations, got " +
                                 std::to_string(series.observations.size()));
    return series;
}

ReturnSeries log_returns(const PriceSeries& prices) {
    if (prices.observations.size() < 2)
        throw std::invalid_argument("log_returns: need at least 2 prices");
    ReturnSeries out;
    out.instrument_id = prices.instrument_id;
    out.source_length = prices.observations.size();
    out.observations.reserve(prices.observations.size() - 1);
    for (std::size_t t = 1; t < prices.observations.size(); ++t) {
        out.observations.push_back({prices.observations[t].date,
                                    std::log(prices.observations[t].price) -
                                        std::log(prices.observations[t - 1].price)});
    }
    return out;
}

SummaryStats summary_stats(const ReturnSeries& returns) {
    return summary_stats(returns.values());
}

SummaryStats summary_stats(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 4) throw std::invalid_argument("summary_stats: need n >= 4");
    SummaryStats s;
    s.n = n;
    const double dn = static_cast<double>(n);
    s.mean = kernels::sum(values) / dn;
    s.min = values[0];
    s.max = values[0];
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        if (v < s.min) s.min = v;
        if (v > s.max) s.max = v;
        double d = v - s.mean;
        double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    if (m2 <= 0.0) throw std::runtime_error("summary_stats: zero variance");
    s.stddev = std::sqrt(m2 * dn / (dn - 1.0));
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
    s.jb_statistic = dn * (s.skewness * s.skewness / 6.0 +
                           (s.kurtosis - 3.0) * (s.kurtosis - 3.0) / 24.0);
    s.jb_pvalue = dist::chi_squared_sf(s.jb_statistic, 2.0);
    return s;
}

std::string to_json(const SummaryStats& s) {
    nlohmann::ordered_json j{{"n", s.n},
                             {"mean", s.mean},
                             {"min", s.min},
                             {"max", s.max},
                             {"stddev", s.stddev},
                             {"skewness", s.skewness},
                             {"kurtosis", s.kurtosis},
                             {"jb_statistic", s.jb_statistic},
                             {"jb_pvalue", s.jb_pvalue}};
    return j.dump();
}

}  // namespace nlscan
