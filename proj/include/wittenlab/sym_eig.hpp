#pragma once

#include <vector>

#include "wittenlab/matrix.hpp"

namespace wittenlab {

// Eigenvalues (ascending) of a small dense symmetric matrix by cyclic
// two-sided Jacobi.  Optionally accumulates eigenvectors as columns.
std::vector<double> sym_eig_jacobi(const Matrix& a, Matrix* vectors = nullptr,
                                   double tol = 1e-15, int max_sweeps = 60);

// Eigen-decomposition of a symmetric tridiagonal matrix (diag d, off-diag e,
// e[i] couples i and i+1) by implicit-shift QL.  Returns eigenvalues
// ascending; if z != nullptr it must come in as identity (or any orthogonal
// basis) and leaves with the eigenvectors in its columns.
std::vector<double> tridiag_eig_ql(std::vector<double> d, std::vector<double> e,
                                   Matrix* z = nullptr);

}  // namespace wittenlab
