#include "nlscan/unitroot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nlscan/linalg.hpp"
#include "nlscan/rng.hpp"

namespace nlscan {

namespace {

struct AdfRegression {
    std::size_t q = 0;        // augmentation order
    double gamma_t = 0.0;     // t-ratio of the level coefficient
    std::vector<double> residuals;
    // Saved design pieces for the RALS augmentation.
    linalg::Matrix design{0, 0};
    std::vector<double> y;
};

// Builds the ADF design for augmentation order q using diff rows
// j = start .. n-2 (start >= q).
AdfRegression run_adf_regression(std::span<const double> x, std::size_t q, std::size_t start,
                                 bool standard_errors) {
    const std::size_t n = x.size();
    const std::size_t n_diffs = n - 1;
    if (start < q || n_diffs <= start)
        throw std::invalid_argument("adf: series too short for augmentation order");
    const std::size_t rows = n_diffs - start;
    if (rows <= q + 3) throw std::invalid_argument("adf: series too short");

    AdfRegression reg;
    reg.q = q;
    reg.design = linalg::Matrix(rows, q + 2);
    reg.y.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t j = start + r;      // diff index: d_j = x[j+1] - x[j]
        reg.y[r] = x[j + 1] - x[j];
        reg.design(r, 0) = 1.0;
        reg.design(r, 1) = x[j];              // lagged level
        for (std::size_t i = 1; i <= q; ++i)
            reg.design(r, 1 + i) = x[j - i + 1] - x[j - i];
    }
    linalg::OlsOptions opts;
    opts.standard_errors = standard_errors;
    auto fit = linalg::ols(reg.design, reg.y, opts);
    if (fit.rank < q + 2) throw std::runtime_error("adf: rank-deficient design");
    if (standard_errors) reg.gamma_t = fit.coef[1] / fit.coef_stderr[1];
    reg.residuals = std::move(fit.residuals);
    return reg;
}

// BIC over q = 0..max_lag on the common sample start = max_lag.
std::size_t select_adf_lag(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    if (n <= max_lag + 10) throw std::invalid_argument("adf: series too short for max_lag");
    std::size_t best_q = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q <= max_lag; ++q) {
        auto reg = run_adf_regression(x, q, max_lag, false);
        double rss = 0.0;
        for (double e : reg.residuals) rss += e * e;
        const double n_eff = static_cast<double>(reg.residuals.size());
        const double sigma2 = rss / n_eff;
        const double candidate_bic =
            sigma2 > 0.0 ? n_eff * std::log(sigma2) + static_cast<double>(q + 2) * std::log(n_eff)
                         : -std::numeric_limits<double>::infinity();
        if (candidate_bic < best_bic - 1e-12) {
            best_bic = candidate_bic;
            best_q = q;
        }
    }
    return best_q;
}

double empirical_quantile(std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

std::size_t default_adf_max_lag(std::size_t n) {
    return static_cast<std::size_t>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

TestOutcome adf(std::span<const double> series, std::size_t max_lag) {
    if (series.size() <= max_lag + 10) throw std::invalid_argument("adf: series too short");
    const std::size_t q = select_adf_lag(series, max_lag);
    auto reg = run_adf_regression(series, q, q, true);

    TestOutcome out;
    out.test_name = "adf";
    out.statistic = reg.gamma_t;
    out.null_distribution = {NullFamily::DickeyFuller, 0.0, 0.0};
    out.critical_value_5pct = kAdfCritical5pct;
    out.reject_at_5pct = reg.gamma_t < kAdfCritical5pct;
    return out;
}

double rals_statistic(std::span<const double> series, std::size_t max_lag) {
    if (series.size() <= max_lag + 10) throw std::invalid_argument("rals: series too short");
    const std::size_t q = select_adf_lag(series, max_lag);
    auto reg = run_adf_regression(series, q, q, false);

    const std::size_t rows = reg.y.size();
    const auto& e = reg.residuals;
    double m2 = 0.0, m3 = 0.0;
    for (double v : e) {
        m2 += v * v;
        m3 += v * v * v;
    }
    m2 /= static_cast<double>(rows);
    m3 /= static_cast<double>(rows);

    // Augment with the second- and third-moment residual regressors.
    linalg::Matrix augmented(rows, reg.design.cols() + 2);
    for (std::size_t j = 0; j < reg.design.cols(); ++j) {
        auto src = reg.design.column(j);
        auto dst = augmented.column(j);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    for (std::size_t r = 0; r < rows; ++r) {
        augmented(r, reg.design.cols()) = e[r] * e[r] - m2;
        augmented(r, reg.design.cols() + 1) = e[r] * e[r] * e[r] - m3 - 3.0 * m2 * e[r];
    }
    linalg::OlsOptions opts;
    opts.standard_errors = true;
    auto fit = linalg::ols(augmented, reg.y, opts);
    if (std::isnan(fit.coef_stderr[1]) || fit.coef_stderr[1] <= 0.0)
        throw std::runtime_error("rals: degenerate augmented regression");
    return fit.coef[1] / fit.coef_stderr[1];
}

TestOutcome rals(std::span<const double> series, std::size_t max_lag,
                 const RalsCriticalValues& critical_values) {
    TestOutcome out;
    out.test_name = "rals";
    out.statistic = rals_statistic(series, max_lag);
    out.null_distribution = {NullFamily::DickeyFuller, 0.0, 0.0};
    out.critical_value_5pct = critical_values.pct5;
    out.reject_at_5pct = out.statistic < critical_values.pct5;
    return out;
}

RalsCriticalValues critical_values_rals(std::size_t n, std::size_t replications,
                                        std::uint64_t seed, std::size_t max_lag) {
    if (replications < 1000)
        throw std::invalid_argument("critical_values_rals: insufficient replications (need >= 1000)");
    std::vector<double> stats;
    stats.reserve(replications);
    std::vector<double> walk(n);
    for (std::size_t rep = 0; rep < replications; ++rep) {
        Rng rng = Rng::substream(seed, rep);
        double level = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            level += rng.next_gaussian();
            walk[t] = level;
        }
        stats.push_back(rals_statistic(walk, max_lag));
    }
    std::sort(stats.begin(), stats.end());
    RalsCriticalValues table;
    table.n = n;
    table.replications = replications;
    table.seed = seed;
    table.pct1 = empirical_quantile(stats, 0.01);
    table.pct5 = empirical_quantile(stats, 0.05);
    table.pct10 = empirical_quantile(stats, 0.10);
    return table;
}

std::string to_csv(const RalsCriticalValues& table) {
    std::ostringstream os;
    os << "quantile,value,n,replications,seed\n";
    auto row = [&](const char* q, double v) {
        os << q << ',' << v << ',' << table.n << ',' << table.replications << ',' << table.seed
           << '\n';
    };
    row("0.01", table.pct1);
    row("0.05", table.pct5);
    row("0.10", table.pct10);
    return os.str();
}

}  // namespace nlscan
