#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nlscan/kernels.hpp"
#include "nlscan/linalg.hpp"
#include "nlscan/rng.hpp"

using namespace nlscan;

TEST_CASE("exact fit of a simple line") {
    // y = 2 + 3x, no noise.
    linalg::Matrix x(5, 2);
    std::vector<double> y(5);
    for (std::size_t i = 0; i < 5; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = static_cast<double>(i);
        y[i] = 2.0 + 3.0 * static_cast<double>(i);
    }
    auto fit = linalg::ols(x, y);
    CHECK(fit.coef[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.coef[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.rss == doctest::Approx(0.0).epsilon(1e-18));
    CHECK(fit.rank == 2);
    CHECK(fit.dropped.empty());
}

TEST_CASE("residuals orthogonal to regressors") {
    Rng rng(42);
    const std::size_t n = 300, p = 5;
    linalg::Matrix x(n, p);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        for (std::size_t j = 1; j < p; ++j) x(i, j) = rng.next_gaussian();
        y[i] = rng.next_gaussian();
    }
    auto fit = linalg::ols(x, y);
    for (std::size_t j = 0; j < p; ++j) {
        double inner = kernels::dot(x.column(j), fit.residuals);
        CHECK(std::abs(inner) < 1e-6 * n);
    }
}

TEST_CASE("collinear column is dropped") {
    Rng rng(7);
    const std::size_t n = 50;
    linalg::Matrix x(n, 3);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = rng.next_gaussian();
        x(i, 2) = 2.0 * x(i, 1);  // exact duplicate direction
        y[i] = rng.next_gaussian();
    }
    auto fit = linalg::ols(x, y);
    CHECK(fit.rank == 2);
    CHECK(fit.dropped.size() == 1);
}

TEST_CASE("all-zero design throws") {
    linalg::Matrix x(10, 2);
    std::vector<double> y(10, 1.0);
    CHECK_THROWS(linalg::ols(x, y));
}

TEST_CASE("standard errors match the textbook simple-regression formula") {
    Rng rng(99);
    const std::size_t n = 120;
    linalg::Matrix x(n, 2);
    std::vector<double> y(n);
    double sx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = rng.next_gaussian();
        sx += x(i, 1);
        y[i] = 1.0 + 0.5 * x(i, 1) + 0.3 * rng.next_gaussian();
    }
    linalg::OlsOptions opts;
    opts.standard_errors = true;
    auto fit = linalg::ols(x, y, opts);
    const double xbar = sx / n;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxx += (x(i, 1) - xbar) * (x(i, 1) - xbar);
    const double sigma2 = fit.rss / (n - 2);
    CHECK(fit.coef_stderr[1] == doctest::Approx(std::sqrt(sigma2 / sxx)).epsilon(1e-10));
}

TEST_CASE("QrFactor annihilate removes the column space") {
    Rng rng(5);
    const std::size_t n = 80, p = 4;
    linalg::Matrix x(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        for (std::size_t j = 1; j < p; ++j) x(i, j) = rng.next_gaussian();
    }
    linalg::QrFactor qr(x);
    // A vector inside the span annihilates to ~0.
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 2.0 * x(i, 0) - x(i, 2) + 0.5 * x(i, 3);
    qr.annihilate(v);
    CHECK(std::sqrt(kernels::sum_sq(v)) < 1e-10);

    // A general vector becomes orthogonal to every column.
    std::vector<double> w(n);
    for (auto& e : w) e = rng.next_gaussian();
    auto w0 = w;
    qr.annihilate(w);
    for (std::size_t j = 0; j < p; ++j) CHECK(std::abs(kernels::dot(x.column(j), w)) < 1e-8);
    // Idempotent.
    auto w2 = w;
    qr.annihilate(w2);
    for (std::size_t i = 0; i < n; ++i) CHECK(w2[i] == doctest::Approx(w[i]).epsilon(1e-10));
    (void)w0;
}
