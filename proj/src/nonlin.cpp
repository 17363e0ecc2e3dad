#include "nlscan/nonlin.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nlscan/dist.hpp"
#include "nlscan/kernels.hpp"
#include "nlscan/linalg.hpp"

namespace nlscan {

namespace {

std::vector<double> squares(std::span<const double> x) {
    std::vector<double> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] * x[i];
    return s;
}

void require_positive_variance(std::span<const double> x, const char* what) {
    const double mean = kernels::sum(x) / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    if (ss <= 1e-14 * static_cast<double>(x.size()))
        throw std::runtime_error(std::string("degenerate squared series: ") + what);
}

}  // namespace

void BatteryConfig::validate() const {
    if (lags.empty() || bds_dims.empty()) throw std::invalid_argument("battery: empty test grid");
    for (auto l : lags)
        if (l < 1) throw std::invalid_argument("battery: lags must be >= 1");
    for (auto m : bds_dims)
        if (m < 2) throw std::invalid_argument("battery: bds dimensions must be >= 2");
    if (bds_eps_multiples.size() != bds_dims.size())
        throw std::invalid_argument("battery: eps multiples must pair with bds dimensions");
    for (auto e : bds_eps_multiples)
        if (e <= 0.0) throw std::invalid_argument("battery: eps multiples must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("battery: alpha must be in (0,1)");
}

TestOutcome mcleod_li(std::span<const double> resid, std::size_t lag) {
    const std::size_t n = resid.size();
    if (lag < 1) throw std::invalid_argument("mcleod_li: lag must be >= 1");
    if (n <= 3 * lag) throw std::invalid_argument("mcleod_li: series too short");
    auto sq = squares(resid);
    require_positive_variance(sq, "mcleod_li");

    const double mean = kernels::sum(sq) / static_cast<double>(n);
    const double c0 = kernels::autocov_sum(sq, 0, mean) / static_cast<double>(n);
    double q = 0.0;
    for (std::size_t k = 1; k <= lag; ++k) {
        const double rk = kernels::autocov_sum(sq, k, mean) / static_cast<double>(n) / c0;
        q += rk * rk / static_cast<double>(n - k);
    }
    q *= static_cast<double>(n) * static_cast<double>(n + 2);

    TestOutcome out;
    out.test_name = "mcleod_li";
    out.statistic = q;
    out.null_distribution = {NullFamily::ChiSquared, static_cast<double>(lag), 0.0};
    out.p_value = dist::chi_squared_sf(q, static_cast<double>(lag));
    out.reject_at_5pct = *out.p_value < 0.05;
    return out;
}

TestOutcome tsay(std::span<const double> resid, std::size_t lag) {
    const std::size_t n = resid.size();
    const std::size_t m_full = lag * (lag + 1) / 2;
    if (n <= lag + m_full + 10) throw std::invalid_argument("tsay: series too short");
    const std::size_t rows = n - lag;

    // Stage 1: x_t on [1, lags]; keep both the residual and the Q factor so
    // the cross products can be annihilated cheaply.
    linalg::Matrix design(rows, lag + 1);
    std::vector<double> y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = lag + r;
        y[r] = resid[t];
        design(r, 0) = 1.0;
        for (std::size_t i = 1; i <= lag; ++i) design(r, i) = resid[t - i];
    }
    linalg::QrFactor qr(design);
    std::vector<double> e(y);
    qr.annihilate(e);

    // Stage 2: residualize every cross product x_{t-i} x_{t-j}, i <= j.
    linalg::Matrix u(rows, m_full);
    std::size_t col = 0;
    std::vector<double> work(rows);
    for (std::size_t i = 1; i <= lag; ++i) {
        for (std::size_t j = i; j <= lag; ++j, ++col) {
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t t = lag + r;
                work[r] = resid[t - i] * resid[t - j];
            }
            qr.annihilate(work);
            auto dst = u.column(col);
            std::copy(work.begin(), work.end(), dst.begin());
        }
    }

    // Stage 3: e on the residualized cross products (pivoted; collinear
    // columns are dropped and df reduced).
    auto fit = linalg::ols(u, e);
    const std::size_t m_eff = fit.rank;
    const double ete = kernels::sum_sq(e);
    const double explained = ete - fit.rss;
    const double df2 = static_cast<double>(n) - static_cast<double>(lag) -
                       static_cast<double>(m_eff) - 1.0;
    if (df2 <= 0.0) throw std::runtime_error("tsay: nonpositive denominator df");
    const double f_stat = (explained / static_cast<double>(m_eff)) / (fit.rss / df2);

    TestOutcome out;
    out.test_name = "tsay";
    out.statistic = f_stat;
    out.null_distribution = {NullFamily::FRatio, static_cast<double>(m_eff), df2};
    out.p_value = dist::f_sf(f_stat, static_cast<double>(m_eff), df2);
    out.reject_at_5pct = *out.p_value < 0.05;
    return out;
}

TestOutcome arch_lm(std::span<const double> resid, std::size_t lag) {
    const std::size_t n = resid.size();
    if (n <= 2 * lag + 10) throw std::invalid_argument("arch_lm: series too short");
    auto sq = squares(resid);
    require_positive_variance(sq, "arch_lm");
    const std::size_t rows = n - lag;

    linalg::Matrix design(rows, lag + 1);
    std::vector<double> y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = lag + r;
        y[r] = sq[t];
        design(r, 0) = 1.0;
        for (std::size_t i = 1; i <= lag; ++i) design(r, i) = sq[t - i];
    }
    auto fit = linalg::ols(design, y);
    const double ymean = kernels::sum(y) / static_cast<double>(rows);
    double tss = 0.0;
    for (double v : y) tss += (v - ymean) * (v - ymean);
    if (tss <= 0.0) throw std::runtime_error("arch_lm: degenerate squared series");
    const double r2 = 1.0 - fit.rss / tss;
    const double stat = static_cast<double>(rows) * r2;

    TestOutcome out;
    out.test_name = "arch_lm";
    out.statistic = stat;
    out.null_distribution = {NullFamily::ChiSquared, static_cast<double>(lag), 0.0};
    out.p_value = dist::chi_squared_sf(stat, static_cast<double>(lag));
    out.reject_at_5pct = *out.p_value < 0.05;
    return out;
}

TestOutcome bds(std::span<const double> resid, std::size_t m, double eps) {
    const std::size_t n = resid.size();
    if (m < 2) throw std::invalid_argument("bds: embedding dimension must be >= 2");
    if (eps <= 0.0) throw std::invalid_argument("bds: eps must be positive");
    if (n < 200) throw std::invalid_argument("bds: need at least 200 observations");
    const std::size_t big_n = n - m + 1;  // common index range for all estimators
    const double dn = static_cast<double>(big_n);

    // First-dimension neighbor counts over the common range; yields C and K.
    double pair_count = 0.0;
    double k_sum = 0.0;
    auto common = resid.first(big_n);
    for (std::size_t j = 0; j < big_n; ++j) {
        const double row =
            static_cast<double>(kernels::count_within(common, resid[j], eps)) - 1.0;
        pair_count += row;
        k_sum += row * (row - 1.0);
    }
    const double c1 = pair_count / (dn * (dn - 1.0));
    const double k = k_sum / (dn * (dn - 1.0) * (dn - 2.0));
    if (c1 <= 0.0 || c1 >= 1.0) throw std::runtime_error("bds: degenerate correlation integral");

    // C_m via per-gap runs of consecutive first-dimension matches: embedding
    // pair (s, s+gap) matches iff m consecutive scalar indicators starting at
    // s are all 1.
    double cm_pairs = 0.0;
    for (std::size_t gap = 1; gap < big_n; ++gap) {
        std::size_t run = 0;
        for (std::size_t j = 0; j + gap < n; ++j) {
            if (std::abs(resid[j] - resid[j + gap]) <= eps) {
                if (++run >= m) cm_pairs += 1.0;
            } else {
                run = 0;
            }
        }
    }
    const double cm = 2.0 * cm_pairs / (dn * (dn - 1.0));

    // Asymptotic variance from the published formula in terms of C and K.
    const double md = static_cast<double>(m);
    double v = std::pow(k, md) + (md - 1.0) * (md - 1.0) * std::pow(c1, 2.0 * md) -
               md * md * k * std::pow(c1, 2.0 * md - 2.0);
    for (std::size_t j = 1; j < m; ++j)
        v += 2.0 * std::pow(k, md - static_cast<double>(j)) *
             std::pow(c1, 2.0 * static_cast<double>(j));
    v *= 4.0;
    if (v <= 0.0) throw std::runtime_error("bds: nonpositive asymptotic variance");

    const double w = std::sqrt(dn) * (cm - std::pow(c1, md)) / std::sqrt(v);

    TestOutcome out;
    out.test_name = "bds";
    out.statistic = w;
    out.null_distribution = {NullFamily::StandardNormal, 0.0, 0.0};
    out.p_value = 2.0 * dist::normal_sf(std::abs(w));
    out.reject_at_5pct = *out.p_value < 0.05;
    return out;
}

BatteryReport run_battery(const ResidualSeries& resid, const BatteryConfig& config) {
    config.validate();
    const auto& x = resid.values;

    double sd = 0.0;
    {
        const double mean = kernels::sum(x) / static_cast<double>(x.size());
        double ss = 0.0;
        for (double v : x) ss += (v - mean) * (v - mean);
        sd = std::sqrt(ss / static_cast<double>(x.size()));
    }

    BatteryReport report;
    auto run_cell = [&](BatteryCell cell, auto&& fn) {
        try {
            cell.outcome = fn();
            if (cell.outcome->p_value)
                cell.outcome->reject_at_5pct = *cell.outcome->p_value < config.alpha;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        report.cells.push_back(std::move(cell));
    };

    for (auto lag : config.lags)
        run_cell({"mcleod_li", lag, 0, 0.0, {}, {}}, [&] { return mcleod_li(x, lag); });
    for (auto lag : config.lags)
        run_cell({"tsay", lag, 0, 0.0, {}, {}}, [&] { return tsay(x, lag); });
    for (auto lag : config.lags)
        run_cell({"arch_lm", lag, 0, 0.0, {}, {}}, [&] { return arch_lm(x, lag); });
    for (std::size_t i = 0; i < config.bds_dims.size(); ++i) {
        const auto m = config.bds_dims[i];
        const auto mult = config.bds_eps_multiples[i];
        run_cell({"bds", 0, m, mult, {}, {}}, [&] { return bds(x, m, mult * sd); });
    }
    return report;
}

std::string to_json(const BatteryReport& report) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& c : report.cells) {
        nlohmann::ordered_json j;
        j["test"] = c.test;
        if (c.test == "bds") {
            j["m"] = c.m;
            j["eps_multiple"] = c.eps_multiple;
        } else {
            j["lag"] = c.lag;
        }
        if (c.outcome) j["outcome"] = nlohmann::ordered_json::parse(to_json(*c.outcome));
        if (!c.error.empty()) j["error"] = c.error;
        cells.push_back(std::move(j));
    }
    return cells.dump();
}

std::string to_csv(const BatteryReport& report) {
    std::ostringstream os;
    os << "test,lag,m,eps_multiple,statistic,p_value,reject\n";
    for (const auto& c : report.cells) {
        os << c.test << ',';
        if (c.test == "bds")
            os << ",," << c.m << 'x' << c.eps_multiple << ',';
        else
            os << c.lag << ",,,";
        if (c.outcome) {
            os << c.outcome->statistic << ',';
            if (c.outcome->p_value)
                os << *c.outcome->p_value;
            os << ',' << (c.outcome->reject_at_5pct ? 1 : 0);
        } else {
            os << ",,error: " << c.error;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace nlscan
