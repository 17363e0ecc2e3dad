#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlscan/series.hpp"

namespace nlscan {

struct ARFit {
    std::size_t order = 0;
    double intercept = 0.0;
    std::vector<double> coefficients;  // lag 1 .. lag p
    std::vector<double> residuals;     // length n - p
    double sigma2 = 0.0;               // mean squared residual
    double bic = 0.0;
    std::size_t n_effective = 0;
};

struct ResidualSeries {
    std::vector<double> values;
    std::size_t source_order = 0;
    std::vector<Date> source_dates;  // aligned to each residual; may be empty
};

// OLS fit of x_t = intercept + sum_i phi_i x_{t-i} + e_t, t = p .. n-1.
// Throws on short series or rank-deficient design (e.g. constant input).
ARFit fit_ar(std::span<const double> series, std::size_t p);

// BIC = n_eff ln(sigma2) + (p + 1) ln(n_eff); -inf when sigma2 == 0.
double bic(const ARFit& fit);

// Minimal-BIC order over p in {0..p_max}, all candidates scored on the
// common sample t = p_max .. n-1; ties go to the smaller order. The
// returned fit is refit on the full sample at the winning order.
ARFit select_order(std::span<const double> series, std::size_t p_max);

// BIC-selected AR residuals with aligned dates.
ResidualSeries prewhiten(const ReturnSeries& returns, std::size_t p_max);
ResidualSeries prewhiten(std::span<const double> values, std::size_t p_max);

// (x - mean) / sd with population sd; throws on zero variance.
std::vector<double> standardize(std::span<const double> values);

std::string to_json(const ARFit& fit);

}  // namespace nlscan
