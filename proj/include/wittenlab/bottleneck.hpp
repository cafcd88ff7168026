#pragma once

#include <vector>

#include "wittenlab/persistence.hpp"

namespace wittenlab {

struct Matching {
    // pair.second == -1 means matched to the diagonal
    std::vector<std::pair<int, int>> pairs;  // indices into the degree-p bars of B1/B2
    double cost = 0;
};

struct BottleneckResult {
    double distance = 0;      // +inf if essential-bar counts differ
    bool infinite = false;
    Matching witness;
};

// Bottleneck distance between the degree-p parts of two bar codes.  The
// optimum is attained on the finite candidate set (pairwise endpoint
// differences and half-lengths), located by binary search with bipartite
// matching feasibility tests; essential bars match essential bars only.
BottleneckResult bottleneck_distance(const BarCode& b1, const BarCode& b2, int degree);

struct StabilityReport {
    double sup_diff = 0;
    std::vector<double> per_degree;  // d_bot per degree 0..max
    bool pass = false;
    double tolerance = 0;
};

// Audits d_bot(B(f),B(g)) <= ||f-g||_inf degree by degree.  The tolerance is
// one candidate-cost quantum (1e-12 of the value scale).
StabilityReport stability_audit(const SampledField& f, const SampledField& g,
                                int64_t field_p = 2);

std::string stability_report_to_json(const StabilityReport& r);

}  // namespace wittenlab
