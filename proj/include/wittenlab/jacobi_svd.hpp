#pragma once

#include <vector>

#include "wittenlab/matrix.hpp"

namespace wittenlab {

struct JacobiOptions {
    double tol = 1e-15;      // rotate while |<ai,aj>| > tol*|ai||aj|
    int max_sweeps = 40;
    bool want_vectors = false;
    bool parallel = true;    // round-robin OpenMP schedule vs row-cyclic serial
};

struct SvdResult {
    std::vector<double> sigma;  // ascending
    Matrix u;                   // only if want_vectors (rows x n), columns for sigma>0
    Matrix v;                   // only if want_vectors (n x n)
    int sweeps = 0;
    bool converged = false;
};

// One-sided (Hestenes) Jacobi SVD of an m x n matrix with m >= n.  Column
// pairs are orthogonalized by plane rotations; singular values are the final
// column norms.  Chosen for its high relative accuracy on tiny singular
// values.  The parallel path runs the disjoint pairs of a round-robin
// tournament concurrently; it performs the same rotations per round
// independent of thread count, so results are reproducible.
SvdResult jacobi_svd(const Matrix& a, const JacobiOptions& opt = {});

// Row-cyclic serial reference, kept for testing the parallel schedule.
SvdResult jacobi_svd_serial(const Matrix& a, const JacobiOptions& opt = {});

}  // namespace wittenlab
