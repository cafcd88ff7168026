#pragma once

#include <string>
#include <vector>

#include "wittenlab/persistence.hpp"

namespace wittenlab {

// Endpoint of a bar clipped to a level window.  The degree of a lower
// endpoint equals the bar degree; an upper endpoint counts one degree up.
struct Endpoint {
    int bar = -1;  // index into BarCode::bars
    double value = 0;
};

// Per-degree partition of the bar endpoints lying inside (a,b):
//   X: lower endpoints of bars with both endpoints inside (window-compact),
//   Y: upper endpoints of window-compact bars of one degree down,
//   Z: endpoints lying alone inside the window.
struct EndpointClassification {
    LevelWindow window;
    struct PerDegree {
        std::vector<Endpoint> x, y, z;
        int total() const { return int(x.size() + y.size() + z.size()); }
    };
    std::vector<PerDegree> degree;  // index p = 0..max

    int count_x(int p) const { return p < (int)degree.size() ? (int)degree[p].x.size() : 0; }
    int count_y(int p) const { return p < (int)degree.size() ? (int)degree[p].y.size() : 0; }
    int count_z(int p) const { return p < (int)degree.size() ? (int)degree[p].z.size() : 0; }
    int count_j(int p) const { return p < (int)degree.size() ? degree[p].total() : 0; }
};

EndpointClassification classify(const BarCode& bc, const LevelWindow& window,
                                const CriticalLevels& levels);

// Predicted structure of the small spectrum of the window Witten Laplacians:
// per degree the kernel dimension (#Z) and the multiset of exponential rates
// 2*(death-birth), each window-compact degree-p bar feeding the same rate to
// degree p (through X) and degree p+1 (through Y).
struct SpectralPrediction {
    LevelWindow window;
    double eta_f = 0;
    struct Rate {
        int bar = -1;
        double rate = 0;    // 2 * bar length, eigenvalue ~ e^{-rate/h}
        bool from_x = true; // X^{(p)} side or the paired Y^{(p)} side
    };
    struct PerDegree {
        int zero_multiplicity = 0;
        std::vector<Rate> rates;  // sorted descending (slowest eigenvalue first)
    };
    std::vector<PerDegree> degree;

    int small_count(int p) const {
        if (p >= (int)degree.size()) return 0;
        return degree[p].zero_multiplicity + (int)degree[p].rates.size();
    }
};

SpectralPrediction predict_window_spectrum(const EndpointClassification& cls,
                                           const BarCode& bc, const CriticalLevels& levels);

struct RoughBounds {
    bool empty = true;       // no nonzero small eigenvalues predicted
    double r = 0, R = 0;     // all nonzero small eigenvalues lie in [r, R]
    double log_r = 0, log_R = 0;
};

// Prop-style envelope for the nonzero small eigenvalues at a given h:
// R = e^{-2 eta_f/h} and r = e^{-2(span+eta_f)/h} with span the reachable
// window width.
RoughBounds rough_bounds(const SpectralPrediction& prediction, const CriticalLevels& levels,
                         double h);

std::string prediction_to_json(const SpectralPrediction& p);

}  // namespace wittenlab
