#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace wittenlab {

// Dense row-major matrix of doubles.  Small and plain on purpose: the heavy
// kernels (Jacobi sweeps, Lanczos) live in their own translation units.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    double* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }
    const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    Matrix transposed() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix scaled(double s) const;

    double frobenius_norm() const;
    double max_abs() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

Matrix matmul_at_b(const Matrix& a, const Matrix& b);  // a^T * b
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);  // a * b^T

void matvec(const Matrix& a, const double* x, double* y);
void matvec_t(const Matrix& a, const double* x, double* y);

// Spectral norm via a few power iterations on A^T A (good to ~1e-10 rel).
double spectral_norm_estimate(const Matrix& a, int iters = 60);

// Orthonormalize the columns of a (modified Gram-Schmidt, two passes).
// Returns the orthonormal frame; rank-deficient columns are dropped.
Matrix orthonormalize_columns(const Matrix& a, double tol = 1e-12);

}  // namespace wittenlab
