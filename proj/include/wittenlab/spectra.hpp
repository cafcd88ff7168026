#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wittenlab/arrhenius.hpp"
#include "wittenlab/witten.hpp"

namespace wittenlab {

// The Gram side fixes which kernel the zero singular values describe:
// columns = d^T d (the p-cochain Laplacian block of d^(p)), rows = d d^T.
enum class GramSide { Min, Columns, Rows };

struct SmallSvOptions {
    int dense_limit = 4000;   // use one-sided Jacobi up to this dimension
    bool force_iterative = false;
    int lanczos_max_iter = 600;
    uint64_t seed = 20240901;
    GramSide side = GramSide::Min;
};

struct SmallSvResult {
    std::vector<double> sigma;   // ascending; all of them on the dense path
    double sigma_max = 0;
    bool dense_path = true;
    bool converged = true;       // iterative nonconvergence -> partial + flag
    int iterations = 0;
    // smallest sigma the path can resolve: 0 for Jacobi (relative accuracy),
    // ~sqrt(eps*||G||) for the Gram-Lanczos path
    double accuracy_floor = 0;
};

// k smallest eigenvalue-roots of the requested Gram of the d-block (the
// min(m,n) singular values, padded with the exact rank-deficiency zeros when
// the requested side is the larger one).  Dense path: one-sided Jacobi (high
// relative accuracy even for sigma ~ 1e-12 sigma_max).  Larger problems run
// Lanczos with full reorthogonalization on the smaller-side Gram shifted to
// the small end; that path cannot resolve sigma below sqrt(eps ||Gram||),
// which is reported as accuracy_floor.
SmallSvResult smallest_singular_values(const SparseMatrix& d, int k,
                                       const SmallSvOptions& opt = {});

// Kernel cut: max(1e-12 sigma_max, e^{-(2 span + 10 eta)/h}) and, on the
// iterative path, the accuracy floor.
double kernel_threshold(double sigma_max, double h, double crit_span, double eta_f,
                        double accuracy_floor = 0.0);

// Everything below e^{-eta/(2h)} counts as exponentially small.
double counting_threshold(double h, double eta_f);

struct CountReport {
    int kernel = 0;     // sigma <= kernel threshold
    int small_nonzero = 0;  // kernel threshold < sigma <= counting threshold
    double t_kernel = 0, t_small = 0;
};
CountReport count_small_singular_values(const SmallSvResult& sv, double h, double crit_span,
                                        double eta_f);

// ---- matching observed spectra against a prediction --------------------

struct BlockObservation {
    double h = 0;
    std::vector<double> sigma;  // ascending small singular values of the block
};

struct MatchedRate {
    int bar = -1;
    double rate_pred = 0;        // 2 * bar length
    std::vector<double> h;       // sweep
    std::vector<double> log_lambda;
    double intercept = 0;        // affine fit of -h log lambda vs h
    double slope = 0;
    double power = 0;            // fit of log(lambda e^{rate/h}) vs log h
    double power_intercept = 0;
    double max_fit_residual = 0;  // of the affine rate fit
    int tie_cluster = -1;         // rates sharing the same value share a cluster id
};

struct FitSummary {
    bool ok = false;
    std::string mismatch;        // non-empty when counts disagree
    std::vector<MatchedRate> rates;
    std::vector<std::vector<double>> kernel_sigmas;  // per h, the #zero smallest
};

// Matches the per-h observed singular values of one d-block against the
// predicted kernel count and rate multiset (by sorted order: the kernel takes
// the smallest sigmas, then ascending sigma pairs with descending rate), and
// runs the Arrhenius fits.  Needs >= 3 h values.
FitSummary match_and_fit(const std::vector<BlockObservation>& obs, int zero_count,
                         const std::vector<double>& rates_desc,
                         const std::vector<int>& bar_ids = {});

// CSV report: h,degree,sigma,lambda_log,bar_id,predicted_rate,residual
std::string spectral_report_csv(const FitSummary& fit, int degree);
std::string fit_summary_to_json(const FitSummary& fit);

}  // namespace wittenlab
