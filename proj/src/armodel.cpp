#include "nlscan/armodel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nlscan/kernels.hpp"
#include "nlscan/linalg.hpp"

namespace nlscan {

namespace {

// Fit order p on observations t = start .. n-1 (start >= p).
ARFit fit_ar_from(std::span<const double> x, std::size_t p, std::size_t start) {
    const std::size_t n = x.size();
    if (start < p) throw std::invalid_argument("fit_ar: start before first usable index");
    if (n <= start + 2 || n - start <= p + 2)
        throw std::invalid_argument("fit_ar: series too short for order " + std::to_string(p));
    const std::size_t rows = n - start;

    linalg::Matrix design(rows, p + 1);
    std::vector<double> y(rows);
    for (std::size_t t = 0; t < rows; ++t) {
        y[t] = x[start + t];
        design(t, 0) = 1.0;
        for (std::size_t i = 1; i <= p; ++i) design(t, i) = x[start + t - i];
    }
    auto sol = linalg::ols(design, y);
    if (sol.rank < p + 1) throw std::runtime_error("fit_ar: rank-deficient design");

    ARFit fit;
    fit.order = p;
    fit.intercept = sol.coef[0];
    fit.coefficients.assign(sol.coef.begin() + 1, sol.coef.end());
    fit.residuals = std::move(sol.residuals);
    fit.n_effective = rows;
    fit.sigma2 = sol.rss / static_cast<double>(rows);
    fit.bic = bic(fit);
    return fit;
}

}  // namespace

ARFit fit_ar(std::span<const double> series, std::size_t p) {
    return fit_ar_from(series, p, p);
}

double bic(const ARFit& fit) {
    if (fit.sigma2 <= 0.0) return -std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(fit.n_effective);
    const double k = static_cast<double>(fit.order + 1);
    return n * std::log(fit.sigma2) + k * std::log(n);
}

ARFit select_order(std::span<const double> series, std::size_t p_max) {
    if (series.size() <= p_max + 2)
        throw std::invalid_argument("select_order: series too short for p_max");
    std::size_t best_p = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= p_max; ++p) {
        ARFit candidate = fit_ar_from(series, p, p_max);
        if (candidate.bic < best_bic - 1e-12) {
            best_bic = candidate.bic;
            best_p = p;
        }
    }
    return fit_ar(series, best_p);
}

ResidualSeries prewhiten(std::span<const double> values, std::size_t p_max) {
    ARFit fit = select_order(values, p_max);
    ResidualSeries out;
    out.values = fit.residuals;
    out.source_order = fit.order;
    return out;
}

ResidualSeries prewhiten(const ReturnSeries& returns, std::size_t p_max) {
    ResidualSeries out = prewhiten(returns.values(), p_max);
    out.source_dates.reserve(out.values.size());
    for (std::size_t t = out.source_order; t < returns.observations.size(); ++t)
        out.source_dates.push_back(returns.observations[t].date);
    return out;
}

std::vector<double> standardize(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("standardize: need at least 2 values");
    const double mean = kernels::sum(values) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    if (sd <= 0.0) throw std::runtime_error("standardize: zero variance");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (values[i] - mean) / sd;
    return out;
}

std::string to_json(const ARFit& fit) {
    nlohmann::ordered_json j{{"order", fit.order},
                             {"intercept", fit.intercept},
                             {"coefficients", fit.coefficients},
                             {"sigma2", fit.sigma2},
                             {"bic", fit.bic},
                             {"n_effective", fit.n_effective}};
    return j.dump();
}

}  // namespace nlscan
