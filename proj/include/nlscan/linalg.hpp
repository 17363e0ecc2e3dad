#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlscan::linalg {

// Dense column-major matrix, sized once.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const double> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

struct OlsFit {
    std::vector<double> coef;        // one per design column; dropped columns get 0
    std::vector<double> residuals;   // length rows
    double rss = 0.0;
    std::size_t rank = 0;
    std::vector<std::size_t> dropped;     // design columns removed as collinear
    std::vector<double> coef_stderr;      // NaN for dropped columns; empty unless requested
};

struct OlsOptions {
    double rcond = 1e-10;        // relative pivot threshold for rank detection
    bool standard_errors = false;
};

// Least squares via Householder QR with column pivoting. Throws
// std::invalid_argument on dimension mismatch and std::runtime_error when the
// design has rank 0.
OlsFit ols(const Matrix& design, std::span<const double> y, const OlsOptions& opts = {});

// Unpivoted Householder QR kept around for repeated projections against a
// fixed design (annihilate = I - Q1 Q1').
class QrFactor {
public:
    explicit QrFactor(const Matrix& design);

    std::size_t rows() const { return a_.rows(); }
    std::size_t cols() const { return a_.cols(); }

    void apply_qt(std::span<double> v) const;  // v <- Q' v
    void apply_q(std::span<double> v) const;   // v <- Q v

    // v <- (I - Q1 Q1') v, the residual of v against the design columns.
    void annihilate(std::span<double> v) const;

private:
    Matrix a_;
    std::vector<double> beta_;
};

}  // namespace nlscan::linalg
