#pragma once

#include <string>
#include <vector>

#include "wittenlab/matrix.hpp"

namespace wittenlab {

struct Triplet {
    int row, col;
    double value;
};

// Compressed-sparse-row matrix, assembled from triplets once and immutable
// afterwards, so assembled operators can be shared across solver threads.
class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols, std::vector<Triplet> triplets);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long nnz() const { return static_cast<long>(val_.size()); }

    void multiply(const double* x, double* y) const;            // y = A x
    void multiply_transpose(const double* x, double* y) const;  // y = A^T x

    Matrix to_dense() const;
    SparseMatrix transposed() const;

    double norm_1() const;    // max column sum of |a|
    double norm_inf() const;  // max row sum of |a|

    // coordinate-triplet text export: "row col value" per line
    void write_triplets(const std::string& path) const;
    static SparseMatrix read_triplets(const std::string& path);

    const std::vector<int>& row_ptr() const { return rptr_; }
    const std::vector<int>& col_idx() const { return cidx_; }
    const std::vector<double>& values() const { return val_; }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<int> rptr_, cidx_;
    std::vector<double> val_;
};

// C = A * B (both sparse); used for chain-property checks and Laplacians.
SparseMatrix sparse_matmul(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sparse_add(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace wittenlab
