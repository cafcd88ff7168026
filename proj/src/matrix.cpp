#include "wittenlab/matrix.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wittenlab {

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix c(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            const double* brow = o.row(k);
            double* crow = c.row(i);
            for (int j = 0; j < o.cols_; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

Matrix Matrix::operator-(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] - o.a_[i];
    return c;
}

Matrix Matrix::operator+(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] + o.a_[i];
    return c;
}

Matrix Matrix::scaled(double s) const {
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] * s;
    return c;
}

double Matrix::frobenius_norm() const {
    double s = 0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double s = 0;
    for (double v : a_) s = std::max(s, std::fabs(v));
    return s;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows());
    Matrix c(a.cols(), b.cols());
    for (int k = 0; k < a.rows(); ++k) {
        const double* arow = a.row(k);
        const double* brow = b.row(k);
        for (int i = 0; i < a.cols(); ++i) {
            double aki = arow[i];
            if (aki == 0.0) continue;
            double* crow = c.row(i);
            for (int j = 0; j < b.cols(); ++j) crow[j] += aki * brow[j];
        }
    }
    return c;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.cols());
    Matrix c(a.rows(), b.rows());
    for (int i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        for (int j = 0; j < b.rows(); ++j) {
            const double* brow = b.row(j);
            double s = 0;
            for (int k = 0; k < a.cols(); ++k) s += arow[k] * brow[k];
            c(i, j) = s;
        }
    }
    return c;
}

void matvec(const Matrix& a, const double* x, double* y) {
    for (int i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double s = 0;
        for (int j = 0; j < a.cols(); ++j) s += arow[j] * x[j];
        y[i] = s;
    }
}

void matvec_t(const Matrix& a, const double* x, double* y) {
    for (int j = 0; j < a.cols(); ++j) y[j] = 0;
    for (int i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double xi = x[i];
        if (xi == 0.0) continue;
        for (int j = 0; j < a.cols(); ++j) y[j] += arow[j] * xi;
    }
}

double spectral_norm_estimate(const Matrix& a, int iters) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(a.cols()), y(a.rows());
    for (auto& v : x) v = gauss(rng);
    double nrm = 0;
    for (int it = 0; it < iters; ++it) {
        matvec(a, x.data(), y.data());
        matvec_t(a, y.data(), x.data());
        double s = 0;
        for (double v : x) s += v * v;
        s = std::sqrt(s);
        if (s == 0) return 0.0;
        for (auto& v : x) v /= s;
        nrm = std::sqrt(s);
    }
    return nrm;
}

Matrix orthonormalize_columns(const Matrix& a, double tol) {
    int n = a.rows(), k = a.cols();
    std::vector<std::vector<double>> cols;
    for (int j = 0; j < k; ++j) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = a(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : cols) {
                double dot = 0;
                for (int i = 0; i < n; ++i) dot += q[i] * v[i];
                for (int i = 0; i < n; ++i) v[i] -= dot * q[i];
            }
        }
        double nrm = 0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm > tol) {
            for (auto& x : v) x /= nrm;
            cols.push_back(std::move(v));
        }
    }
    Matrix q(n, static_cast<int>(cols.size()));
    for (int j = 0; j < q.cols(); ++j)
        for (int i = 0; i < n; ++i) q(i, j) = cols[j][i];
    return q;
}

}  // namespace wittenlab
