#pragma once

#include <string>
#include <vector>

#include "wittenlab/matrix.hpp"

namespace wittenlab {

// Subspace of R^n held as an orthonormal column frame.
class Subspace {
  public:
    Subspace() = default;  // the zero subspace of an unspecified ambient space
    explicit Subspace(const Matrix& spanning_columns);  // orthonormalizes
    static Subspace from_orthonormal(const Matrix& frame);

    int ambient() const { return frame_.rows(); }
    int dim() const { return frame_.cols(); }
    const Matrix& frame() const { return frame_; }

    Matrix projector() const;  // frame * frame^T

  private:
    Matrix frame_;
};

// Non-symmetric subspace distance ||P_E - P_F P_E||; zero iff E is contained
// in F (up to tolerance).
double vec_d(const Subspace& e, const Subspace& f);

struct TauBudget {
    std::vector<double> eps;  // each in [0,1)
};

// Accumulated multiplicative error budget: product of (1+eps)/(1-eps).
double tau(const TauBudget& budget);

// max(||A^T A - I||, ||A A^T - I||); A is eps-unitary iff the defect <= eps.
double eps_unitary_defect(const Matrix& a);

std::vector<double> singular_values_of(const Matrix& a);  // ascending

struct ProjectedSvReport {
    bool hypothesis_ok = false;  // eps_1, eps_2 < 1
    double eps1 = 0, eps2 = 0, bound = 0;  // bound = tau(eps1^2, eps2^2)^{1/2}
    std::vector<double> ratio;   // mu_l(B) / mu_l(projected B), nonzero part
    bool pass = false;
};

// Two-sided singular value comparison of B: F -> F against
// P_G B P_F restricted to E, with the tau(eps1^2, eps2^2)^{1/2} budget,
// eps1 = d(E,F)+d(F,E), eps2 = d(F,G)+d(G,F).
ProjectedSvReport check_projected_sv(const Matrix& b_on_f, const Subspace& e, const Subspace& f,
                                     const Subspace& g);

struct AdditiveReport {
    double norm_diff = 0;
    std::vector<double> gap;  // |mu_l(B2) - mu_l(B1)|
    bool pass = false;        // every gap <= ||B2 - B1||
};

// Weyl-type additive perturbation check, exact constants.
AdditiveReport check_additive(const Matrix& b1, const Matrix& b2);

struct FactorizationReport {
    bool hypothesis_ok = false;  // residual of B|_E = C P_F B|_E small enough
    double residual = 0;
    double r_norm = 0;   // ||R|| with P_G B|_E = (I+R) P_F B|_E on the range
    double bound = 0;    // 2 (d(F,G)+d(G,F)) ||C||
    bool pass = false;
};

// Left-multiple transport of a factorization from F to a nearby G; the
// certified slack doubles the distance-times-norm budget.
FactorizationReport check_factorization(const Matrix& b, const Subspace& e, const Subspace& f,
                                        const Subspace& g, const Matrix& c);

struct MultAddScenario {
    Matrix b;         // ambient operator
    Subspace e_prime, e_second, f, g;
    double rho = 0;   // error scale the construction was built with
};

struct MultAddReport {
    bool hypotheses_ok = false;
    std::string diagnosis;       // why the hypotheses failed (skip, not a failure)
    int rank_l0 = 0;
    std::vector<double> rel_gap;  // per l <= l0: |mu_l(PG B PE)/mu_l(B|F) - 1|
    double tail_ratio = 0;        // mu_{l0+1} / mu_{l0} of PG B PE
    double budget = 0;            // c * rho with the documented slack c
    bool pass = false;
};

// Combined multiplicative/additive comparison: checks the commutation, rank,
// factorization and the two inequality budgets numerically, then verifies
// mu_l(P_G B|_E) = mu_l(B|_F)(1+O(rho)) for l <= l0 and the (l0+1)-th ratio
// = O(rho), against budget c*rho with the empirical certified slack c = 50.
MultAddReport check_multadd(const MultAddScenario& scenario);

}  // namespace wittenlab
