#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace wittenlab {

struct LinOp {
    int n = 0;
    std::function<void(const double*, double*)> apply;
};

struct LanczosOptions {
    int max_iter = 600;
    double tol = 1e-13;       // residual tolerance relative to the operator norm
    uint64_t seed = 20240901;
    int check_every = 10;
};

struct LanczosResult {
    std::vector<double> eigenvalues;  // k smallest of the operator, ascending
    double next_eigenvalue = 0;       // (k+1)-th, for threshold certification
    bool converged = false;
    int iterations = 0;
};

// Smallest eigenvalues of a symmetric positive semidefinite operator (a Gram
// matrix d^T d or d d^T) by Lanczos with full reorthogonalization applied to
// shift*I - G, the shift placed just above ||G||.  Eigenvalues below the
// roundoff floor ~eps*||G|| come out as 0.
LanczosResult lanczos_smallest(const LinOp& gram, double gram_norm, int k,
                               const LanczosOptions& opt = {});

}  // namespace wittenlab
