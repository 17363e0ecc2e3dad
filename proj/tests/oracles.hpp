// Brute-force reference implementations used by the unit and acceptance
// suites. Deliberately naive: plain loops and normal equations via Gaussian
// elimination, independent of the library's QR and kernel code paths.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline std::vector<double> solve_normal_equations(const std::vector<std::vector<double>>& cols,
                                                  const std::vector<double>& y) {
    const std::size_t p = cols.size();
    std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t t = 0; t < y.size(); ++t) a[i][j] += cols[i][t] * cols[j][t];
        for (std::size_t t = 0; t < y.size(); ++t) a[i][p] += cols[i][t] * y[t];
    }
    for (std::size_t k = 0; k < p; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < p; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        std::swap(a[k], a[piv]);
        for (std::size_t i = k + 1; i < p; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j <= p; ++j) a[i][j] -= f * a[k][j];
        }
    }
    std::vector<double> beta(p);
    for (std::size_t k = p; k-- > 0;) {
        double s = a[k][p];
        for (std::size_t j = k + 1; j < p; ++j) s -= a[k][j] * beta[j];
        beta[k] = s / a[k][k];
    }
    return beta;
}

inline std::vector<double> regression_residuals(const std::vector<std::vector<double>>& cols,
                                                const std::vector<double>& y) {
    auto beta = solve_normal_equations(cols, y);
    std::vector<double> resid(y);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t t = 0; t < y.size(); ++t) resid[t] -= beta[j] * cols[j][t];
    return resid;
}

inline double mcleod_li_q(const std::vector<double>& x, std::size_t lag) {
    const std::size_t n = x.size();
    std::vector<double> sq(n);
    for (std::size_t t = 0; t < n; ++t) sq[t] = x[t] * x[t];
    double mean = 0.0;
    for (double v : sq) mean += v;
    mean /= n;
    double c0 = 0.0;
    for (double v : sq) c0 += (v - mean) * (v - mean);
    c0 /= n;
    double q = 0.0;
    for (std::size_t k = 1; k <= lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < n; ++t) ck += (sq[t] - mean) * (sq[t - k] - mean);
        ck /= n;
        const double rho = ck / c0;
        q += rho * rho / (n - k);
    }
    return q * n * (n + 2.0);
}

inline double arch_lm_stat(const std::vector<double>& x, std::size_t lag) {
    const std::size_t n = x.size();
    const std::size_t rows = n - lag;
    std::vector<std::vector<double>> cols(lag + 1, std::vector<double>(rows));
    std::vector<double> y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = lag + r;
        y[r] = x[t] * x[t];
        cols[0][r] = 1.0;
        for (std::size_t i = 1; i <= lag; ++i) cols[i][r] = x[t - i] * x[t - i];
    }
    auto resid = regression_residuals(cols, y);
    double ymean = 0.0;
    for (double v : y) ymean += v;
    ymean /= rows;
    double tss = 0.0, rss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        tss += (y[r] - ymean) * (y[r] - ymean);
        rss += resid[r] * resid[r];
    }
    return rows * (1.0 - rss / tss);
}

inline double tsay_f(const std::vector<double>& x, std::size_t lag) {
    const std::size_t n = x.size();
    const std::size_t rows = n - lag;
    std::vector<std::vector<double>> base(lag + 1, std::vector<double>(rows));
    std::vector<double> y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = lag + r;
        y[r] = x[t];
        base[0][r] = 1.0;
        for (std::size_t i = 1; i <= lag; ++i) base[i][r] = x[t - i];
    }
    auto e = regression_residuals(base, y);

    std::vector<std::vector<double>> u;
    for (std::size_t i = 1; i <= lag; ++i)
        for (std::size_t j = i; j <= lag; ++j) {
            std::vector<double> cross(rows);
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t t = lag + r;
                cross[r] = x[t - i] * x[t - j];
            }
            u.push_back(regression_residuals(base, cross));
        }
    const std::size_t m = u.size();
    auto final_resid = regression_residuals(u, e);
    double ete = 0.0, rss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        ete += e[r] * e[r];
        rss += final_resid[r] * final_resid[r];
    }
    const double df2 = static_cast<double>(n) - lag - m - 1.0;
    return ((ete - rss) / m) / (rss / df2);
}

struct BdsParts {
    double c1, cm, k, w;
};

inline BdsParts bds_parts(const std::vector<double>& x, std::size_t m, double eps) {
    const std::size_t n = x.size();
    const std::size_t big_n = n - m + 1;
    auto ind = [&](std::size_t a, std::size_t b) {
        return std::abs(x[a] - x[b]) <= eps ? 1.0 : 0.0;
    };
    double c1 = 0.0, cm = 0.0;
    for (std::size_t s = 0; s < big_n; ++s)
        for (std::size_t t = s + 1; t < big_n; ++t) {
            c1 += ind(s, t);
            double prod = 1.0;
            for (std::size_t j = 0; j < m; ++j) prod *= ind(s + j, t + j);
            cm += prod;
        }
    const double dn = static_cast<double>(big_n);
    c1 *= 2.0 / (dn * (dn - 1.0));
    cm *= 2.0 / (dn * (dn - 1.0));
    double k = 0.0;
    for (std::size_t i = 0; i < big_n; ++i)
        for (std::size_t j = 0; j < big_n; ++j) {
            if (j == i) continue;
            for (std::size_t l = 0; l < big_n; ++l) {
                if (l == i || l == j) continue;
                k += ind(i, j) * ind(j, l);
            }
        }
    k /= dn * (dn - 1.0) * (dn - 2.0);
    const double md = static_cast<double>(m);
    double v = std::pow(k, md) + (md - 1.0) * (md - 1.0) * std::pow(c1, 2.0 * md) -
               md * md * k * std::pow(c1, 2.0 * md - 2.0);
    for (std::size_t j = 1; j < m; ++j)
        v += 2.0 * std::pow(k, md - static_cast<double>(j)) *
             std::pow(c1, 2.0 * static_cast<double>(j));
    v *= 4.0;
    const double w = std::sqrt(dn) * (cm - std::pow(c1, md)) / std::sqrt(v);
    return {c1, cm, k, w};
}

// Independent triple-loop H statistic: standardize by hand, raw loops over
// all lag pairs with L = floor(n^c).
inline double h_stat(const std::vector<double>& window, double c) {
    const std::size_t n = window.size();
    double mean = 0.0;
    for (double v : window) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : window) var += (v - mean) * (v - mean);
    var /= n;
    const double sd = std::sqrt(var);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (window[i] - mean) / sd;

    const std::size_t lags =
        static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), c)));
    double h = 0.0;
    for (std::size_t s = 2; s <= lags; ++s)
        for (std::size_t r = 1; r < s; ++r) {
            double csum = 0.0;
            for (std::size_t t = 0; t + s < n; ++t) csum += z[t] * z[t + r] * z[t + s];
            const double bicorr = csum / static_cast<double>(n - s);
            h += static_cast<double>(n - s) * bicorr * bicorr;
        }
    return h;
}

}  // namespace oracle
