#include "wittenlab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wittenlab {

double quintic_hermite(double t, double v0, double m0, double a0, double v1, double m1,
                       double a1) {
    double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    double h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    double h3 = 10 * t3 - 15 * t4 + 6 * t5;
    double h4 = -4 * t3 + 7 * t4 - 3 * t5;
    double h5 = 0.5 * t3 - t4 + 0.5 * t5;
    return v0 * h0 + m0 * h1 + a0 * h2 + v1 * h3 + m1 * h4 + a1 * h5;
}

DesignedLandscape::DesignedLandscape(std::vector<Knot> knots, double period,
                                     std::vector<SegmentOverride> overrides)
    : knots_(std::move(knots)), period_(period), overrides_(std::move(overrides)) {
    if (knots_.size() < 2) throw std::invalid_argument("landscape: need at least 2 knots");
    std::sort(knots_.begin(), knots_.end(), [](const Knot& a, const Knot& b) { return a.x < b.x; });
    for (size_t i = 1; i < knots_.size(); ++i)
        if (knots_[i].x <= knots_[i - 1].x)
            throw std::invalid_argument("landscape: knot positions must be strictly increasing");
    if (knots_.back().x >= period_) throw std::invalid_argument("landscape: knot beyond period");
}

double DesignedLandscape::operator()(double x) const {
    x = std::fmod(x, period_);
    if (x < 0) x += period_;
    for (const auto& ov : overrides_) {
        if (ov.x0 <= ov.x1) {
            if (x >= ov.x0 && x < ov.x1) return ov.eval(x);
        } else {  // wrapping interval
            if (x >= ov.x0 || x < ov.x1) return ov.eval(x < ov.x1 ? x + period_ : x);
        }
    }
    // locate the segment (wrapping after the last knot)
    size_t i = 0;
    while (i + 1 < knots_.size() && knots_[i + 1].x <= x) ++i;
    const Knot* k0;
    const Knot* k1;
    double len, t;
    if (x < knots_.front().x) {
        k0 = &knots_.back();
        k1 = &knots_.front();
        len = period_ - k0->x + k1->x;
        t = (x + period_ - k0->x) / len;
    } else if (i + 1 == knots_.size()) {
        k0 = &knots_.back();
        k1 = &knots_.front();
        len = period_ - k0->x + k1->x;
        t = (x - k0->x) / len;
    } else {
        k0 = &knots_[i];
        k1 = &knots_[i + 1];
        len = k1->x - k0->x;
        t = (x - k0->x) / len;
    }
    return quintic_hermite(t, k0->value, k0->slope * len, k0->curvature * len * len, k1->value,
                           k1->slope * len, k1->curvature * len * len);
}

FieldExpr DesignedLandscape::expr(const std::string& name) const {
    DesignedLandscape copy = *this;
    return {name, [copy](double x, double) { return copy(x); }};
}

bool DesignedLandscape::extrema_match_design(int scan) const {
    int zero_knots = 0;
    for (const auto& k : knots_) {
        if (k.slope == 0) ++zero_knots;
    }
    int sign_changes = 0;
    double prev = (*this)(1e-9) - (*this)(-1e-9);
    for (int i = 1; i <= scan; ++i) {
        double x = period_ * i / scan;
        double d = (*this)(x + 1e-9) - (*this)(x - 1e-9);
        if (d * prev < 0) ++sign_changes;
        if (d != 0) prev = d;
    }
    return sign_changes == zero_knots;
}

}  // namespace wittenlab
