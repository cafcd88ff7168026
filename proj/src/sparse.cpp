#include "wittenlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wittenlab {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<Triplet> t)
    : rows_(rows), cols_(cols) {
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    rptr_.assign(rows_ + 1, 0);
    cidx_.reserve(t.size());
    val_.reserve(t.size());
    size_t i = 0;
    while (i < t.size()) {
        size_t j = i;
        double s = 0;
        while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col) s += t[j++].value;
        if (t[i].row < 0 || t[i].row >= rows_ || t[i].col < 0 || t[i].col >= cols_)
            throw std::out_of_range("SparseMatrix: triplet out of range");
        if (s != 0.0) {
            cidx_.push_back(t[i].col);
            val_.push_back(s);
            ++rptr_[t[i].row + 1];
        }
        i = j;
    }
    for (int r = 0; r < rows_; ++r) rptr_[r + 1] += rptr_[r];
}

void SparseMatrix::multiply(const double* x, double* y) const {
    for (int r = 0; r < rows_; ++r) {
        double s = 0;
        for (int k = rptr_[r]; k < rptr_[r + 1]; ++k) s += val_[k] * x[cidx_[k]];
        y[r] = s;
    }
}

void SparseMatrix::multiply_transpose(const double* x, double* y) const {
    std::fill(y, y + cols_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        double xr = x[r];
        if (xr == 0.0) continue;
        for (int k = rptr_[r]; k < rptr_[r + 1]; ++k) y[cidx_[k]] += val_[k] * xr;
    }
}

Matrix SparseMatrix::to_dense() const {
    Matrix d(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = rptr_[r]; k < rptr_[r + 1]; ++k) d(r, cidx_[k]) = val_[k];
    return d;
}

SparseMatrix SparseMatrix::transposed() const {
    std::vector<Triplet> t;
    t.reserve(val_.size());
    for (int r = 0; r < rows_; ++r)
        for (int k = rptr_[r]; k < rptr_[r + 1]; ++k) t.push_back({cidx_[k], r, val_[k]});
    return SparseMatrix(cols_, rows_, std::move(t));
}

double SparseMatrix::norm_1() const {
    std::vector<double> colsum(cols_, 0.0);
    for (int r = 0; r < rows_; ++r)
        for (int k = rptr_[r]; k < rptr_[r + 1]; ++k) colsum[cidx_[k]] += std::fabs(val_[k]);
    double m = 0;
    for (double s : colsum) m = std::max(m, s);
    return m;
}

double SparseMatrix::norm_inf() const {
    double m = 0;
    for (int r = 0; r < rows_; ++r) {
        double s = 0;
        for (int k = rptr_[r]; k < rptr_[r + 1]; ++k) s += std::fabs(val_[k]);
        m = std::max(m, s);
    }
    return m;
}

void SparseMatrix::write_triplets(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << rows_ << " " << cols_ << " " << nnz() << "\n";
    char buf[64];
    for (int r = 0; r < rows_; ++r)
        for (int k = rptr_[r]; k < rptr_[r + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r, cidx_[k], val_[k]);
            out << buf;
        }
}

SparseMatrix SparseMatrix::read_triplets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    int rows, cols;
    long nnz;
    if (!(in >> rows >> cols >> nnz)) throw std::runtime_error("bad triplet header in " + path);
    std::vector<Triplet> t;
    t.reserve(nnz);
    int r, c;
    double v;
    while (in >> r >> c >> v) t.push_back({r, c, v});
    if (static_cast<long>(t.size()) != nnz)
        throw std::runtime_error("triplet count mismatch in " + path);
    return SparseMatrix(rows, cols, std::move(t));
}

SparseMatrix sparse_matmul(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("sparse_matmul: shape mismatch");
    std::vector<Triplet> t;
    const auto& arp = a.row_ptr();
    const auto& aci = a.col_idx();
    const auto& av = a.values();
    const auto& brp = b.row_ptr();
    const auto& bci = b.col_idx();
    const auto& bv = b.values();
    std::map<int, double> rowacc;
    for (int r = 0; r < a.rows(); ++r) {
        rowacc.clear();
        for (int k = arp[r]; k < arp[r + 1]; ++k) {
            int mid = aci[k];
            double va = av[k];
            for (int k2 = brp[mid]; k2 < brp[mid + 1]; ++k2) rowacc[bci[k2]] += va * bv[k2];
        }
        for (auto& [c, v] : rowacc)
            if (v != 0.0) t.push_back({r, c, v});
    }
    return SparseMatrix(a.rows(), b.cols(), std::move(t));
}

SparseMatrix sparse_add(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("sparse_add: shape mismatch");
    std::vector<Triplet> t;
    for (int r = 0; r < a.rows(); ++r)
        for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k)
            t.push_back({r, a.col_idx()[k], a.values()[k]});
    for (int r = 0; r < b.rows(); ++r)
        for (int k = b.row_ptr()[r]; k < b.row_ptr()[r + 1]; ++k)
            t.push_back({r, b.col_idx()[k], b.values()[k]});
    return SparseMatrix(a.rows(), a.cols(), std::move(t));
}

}  // namespace wittenlab
