#pragma once

// CDFs and survival functions used across the test battery. Chi-square and F
// are built on the regularized incomplete gamma and beta functions; accuracy
// is checked against high-precision reference values in the test suite.

namespace nlscan::dist {

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

double chi_squared_cdf(double x, double df);
double chi_squared_sf(double x, double df);

double f_sf(double x, double df1, double df2);

double normal_cdf(double x);
double normal_sf(double x);

// Inverse of the standard normal CDF. Accurate to ~1e-15 after refinement.
double normal_quantile(double p);

// Inverse of the chi-square CDF, p in (0, 1).
double chi_squared_quantile(double p, double df);

}  // namespace nlscan::dist
