#include "nlscan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlscan/kernels.hpp"

namespace nlscan::linalg {

OlsFit ols(const Matrix& design, std::span<const double> y, const OlsOptions& opts) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (y.size() != n) throw std::invalid_argument("ols: y length does not match design rows");
    if (n < p) throw std::invalid_argument("ols: more columns than rows");

    // Working copies; A is factored in place, qty accumulates Q^T y.
    Matrix a = design;
    std::vector<double> qty(y.begin(), y.end());
    std::vector<std::size_t> perm(p);
    for (std::size_t j = 0; j < p; ++j) perm[j] = j;

    std::vector<double> colnorm(p);
    for (std::size_t j = 0; j < p; ++j) colnorm[j] = kernels::sum_sq(a.column(j));
    double max_norm = *std::max_element(colnorm.begin(), colnorm.end());
    if (max_norm <= 0.0) throw std::runtime_error("ols: design matrix is zero");
    const double threshold = opts.rcond * opts.rcond * max_norm;

    std::vector<double> beta_v(p, 0.0);  // Householder scalar factors
    std::size_t rank = 0;

    auto swap_cols = [&](std::size_t j, std::size_t k) {
        if (j == k) return;
        auto cj = a.column(j);
        auto ck = a.column(k);
        std::swap_ranges(cj.begin(), cj.end(), ck.begin());
        std::swap(colnorm[j], colnorm[k]);
        std::swap(perm[j], perm[k]);
    };

    for (std::size_t k = 0; k < p && k < n; ++k) {
        // Pivot on largest remaining partial column norm.
        std::size_t pivot = k;
        double best = 0.0;
        for (std::size_t j = k; j < p; ++j) {
            auto col = a.column(j);
            double nrm = kernels::sum_sq(col.subspan(k));
            if (nrm > best) {
                best = nrm;
                pivot = j;
            }
        }
        if (best <= threshold) break;
        swap_cols(k, pivot);

        auto ck = a.column(k);
        double alpha = std::sqrt(best);
        if (ck[k] > 0.0) alpha = -alpha;
        double v0 = ck[k] - alpha;
        ck[k] = alpha;
        // Householder vector is (v0, ck[k+1..n)) stored below the diagonal
        // scaled so its first entry is 1.
        for (std::size_t i = k + 1; i < n; ++i) ck[i] /= v0;
        beta_v[k] = -v0 / alpha;

        auto apply = [&](std::span<double> col) {
            double s = col[k];
            for (std::size_t i = k + 1; i < n; ++i) s += ck[i] * col[i];
            s *= beta_v[k];
            col[k] -= s;
            for (std::size_t i = k + 1; i < n; ++i) col[i] -= s * ck[i];
        };
        for (std::size_t j = k + 1; j < p; ++j) apply(a.column(j));
        apply(qty);
        ++rank;
    }
    if (rank == 0) throw std::runtime_error("ols: rank-deficient design (rank 0)");

    // Back substitution on the leading rank x rank triangle.
    std::vector<double> sol(rank);
    for (std::size_t ii = rank; ii-- > 0;) {
        double s = qty[ii];
        for (std::size_t j = ii + 1; j < rank; ++j) s -= a(ii, j) * sol[j];
        sol[ii] = s / a(ii, ii);
    }

    OlsFit fit;
    fit.rank = rank;
    fit.coef.assign(p, 0.0);
    for (std::size_t j = 0; j < rank; ++j) fit.coef[perm[j]] = sol[j];
    for (std::size_t j = rank; j < p; ++j) fit.dropped.push_back(perm[j]);
    std::sort(fit.dropped.begin(), fit.dropped.end());

    fit.residuals.assign(y.begin(), y.end());
    for (std::size_t j = 0; j < p; ++j) {
        double c = fit.coef[j];
        if (c == 0.0) continue;
        auto col = design.column(j);
        for (std::size_t i = 0; i < n; ++i) fit.residuals[i] -= c * col[i];
    }
    fit.rss = kernels::sum_sq(fit.residuals);

    if (opts.standard_errors) {
        fit.coef_stderr.assign(p, std::numeric_limits<double>::quiet_NaN());
        if (n > rank) {
            const double sigma2 = fit.rss / static_cast<double>(n - rank);
            // diag of (X'X)^-1 = rows of R^-1: solve R^T w = e_j, then |R^-1
            // e_j|^2 equals |row j of R^-1|^2 obtained from R^-1 columns.
            // Compute R^-1 explicitly (rank is small).
            Matrix rinv(rank, rank);
            for (std::size_t j = 0; j < rank; ++j) {
                std::vector<double> e(rank, 0.0);
                e[j] = 1.0;
                for (std::size_t ii = rank; ii-- > 0;) {
                    double s = e[ii];
                    for (std::size_t kk = ii + 1; kk < rank; ++kk) s -= a(ii, kk) * rinv(kk, j);
                    rinv(ii, j) = s / a(ii, ii);
                }
            }
            for (std::size_t i = 0; i < rank; ++i) {
                double d = 0.0;
                for (std::size_t j = i; j < rank; ++j) d += rinv(i, j) * rinv(i, j);
                fit.coef_stderr[perm[i]] = std::sqrt(sigma2 * d);
            }
        }
    }
    return fit;
}

QrFactor::QrFactor(const Matrix& design) : a_(design), beta_(design.cols(), 0.0) {
    const std::size_t n = a_.rows();
    const std::size_t p = a_.cols();
    if (n < p) throw std::invalid_argument("QrFactor: more columns than rows");
    for (std::size_t k = 0; k < p; ++k) {
        auto ck = a_.column(k);
        double nrm = kernels::sum_sq(std::span<const double>(ck).subspan(k));
        if (nrm <= 0.0) throw std::runtime_error("QrFactor: rank-deficient design");
        double alpha = std::sqrt(nrm);
        if (ck[k] > 0.0) alpha = -alpha;
        double v0 = ck[k] - alpha;
        ck[k] = alpha;
        for (std::size_t i = k + 1; i < n; ++i) ck[i] /= v0;
        beta_[k] = -v0 / alpha;
        for (std::size_t j = k + 1; j < p; ++j) {
            auto col = a_.column(j);
            double s = col[k];
            for (std::size_t i = k + 1; i < n; ++i) s += ck[i] * col[i];
            s *= beta_[k];
            col[k] -= s;
            for (std::size_t i = k + 1; i < n; ++i) col[i] -= s * ck[i];
        }
    }
}

void QrFactor::apply_qt(std::span<double> v) const {
    const std::size_t n = a_.rows();
    for (std::size_t k = 0; k < a_.cols(); ++k) {
        auto ck = a_.column(k);
        double s = v[k];
        for (std::size_t i = k + 1; i < n; ++i) s += ck[i] * v[i];
        s *= beta_[k];
        v[k] -= s;
        for (std::size_t i = k + 1; i < n; ++i) v[i] -= s * ck[i];
    }
}

void QrFactor::apply_q(std::span<double> v) const {
    const std::size_t n = a_.rows();
    for (std::size_t kk = a_.cols(); kk-- > 0;) {
        auto ck = a_.column(kk);
        double s = v[kk];
        for (std::size_t i = kk + 1; i < n; ++i) s += ck[i] * v[i];
        s *= beta_[kk];
        v[kk] -= s;
        for (std::size_t i = kk + 1; i < n; ++i) v[i] -= s * ck[i];
    }
}

void QrFactor::annihilate(std::span<double> v) const {
    apply_qt(v);
    for (std::size_t k = 0; k < a_.cols(); ++k) v[k] = 0.0;
    apply_q(v);
}

}  // namespace nlscan::linalg
