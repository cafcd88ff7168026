#pragma once

#include <functional>
#include <vector>

#include "wittenlab/grid.hpp"

namespace wittenlab {

// Circle landscape assembled from knots with prescribed value, slope and
// curvature, joined by quintic Hermite segments; closed-form cores (e.g. a
// quartic bottom) can override a segment.  Knots with zero slope are the
// designed critical points, so critical values and Hessians are exact.
struct Knot {
    double x = 0;       // position in [0, period)
    double value = 0;
    double slope = 0;
    double curvature = 0;
};

struct SegmentOverride {
    double x0 = 0, x1 = 0;                      // arc covered (may wrap)
    std::function<double(double)> eval;          // x measured like knots
};

class DesignedLandscape {
  public:
    DesignedLandscape(std::vector<Knot> knots, double period,
                      std::vector<SegmentOverride> overrides = {});

    double operator()(double x) const;
    double period() const { return period_; }
    const std::vector<Knot>& knots() const { return knots_; }

    FieldExpr expr(const std::string& name) const;

    // true when the only sign changes of f' on a fine scan are at the
    // zero-slope knots (no stray extrema from the quintic joins)
    bool extrema_match_design(int scan = 16384) const;

  private:
    std::vector<Knot> knots_;
    double period_;
    std::vector<SegmentOverride> overrides_;
};

double quintic_hermite(double t, double v0, double m0, double a0, double v1, double m1, double a1);

}  // namespace wittenlab
