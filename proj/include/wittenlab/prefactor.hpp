#pragma once

#include <vector>

#include "wittenlab/logvalue.hpp"

namespace wittenlab {

// Small-eigenvalue estimate; the log form is authoritative, raw() may
// underflow to zero for large gap/h.
struct RateEstimate {
    LogValue value;
    double log() const { return value.log_mag; }
    double raw() const { return value.to_double(); }
};

// Non-degenerate critical point: critical value, Morse index, and the
// Hessian eigenvalues (negative ones first, exactly `index` of them).
struct MorseDatum {
    double value = 0;
    int index = 0;
    std::vector<double> hessian;

    int dim() const { return static_cast<int>(hessian.size()); }
    void validate() const;                 // throws on sign/zero violations
    double abs_det() const;                // |det Hess|
    double neg_product(int count) const;   // |lambda_1 ... lambda_count|
    double pos_product_from(int first) const;
};

// Leading Eyring-Kramers term for a bar running from critical point x
// (index p) to critical point y (index p+1):
//   kappa^2 (h/pi) * |l1..l_{p+1}(y)| / |l1..l_p(x)|
//     * |det Hess x|^{1/2} / |det Hess y|^{1/2} * e^{-2(y-x)/h}.
RateEstimate morse_rate(const MorseDatum& x, const MorseDatum& y, double kappa_sq, double h);

// Degenerate-minimum replacement for the lower endpoint: the Hessian data of
// the minimum is replaced by the basin integral int_Omega e^{-2(f-min)/h} dx:
//   (h |l1(y)| / (pi |det Hess y|^{1/2})) e^{-2 gap/h}
//     / ((pi h)^{-d/2} basin_integral).
RateEstimate degenerate_min_rate(const MorseDatum& saddle, double basin_integral, double gap,
                                 double h);

struct SlopePair {
    double left = 0;   // one-sided derivative from the left
    double right = 0;  // one-sided derivative from the right
};

// Piecewise-affine landscape: harmonic means of the slope magnitudes at the
// minimum and at the saddle, no power of h:
//   H[|f'(y+0)|, f'(y-0)] * H[f'(x+0), |f'(x-0)|] * e^{-2 gap/h}.
RateEstimate piecewise_affine_rate(const SlopePair& min_slopes, const SlopePair& max_slopes,
                                   double gap, double h);

// Multiple critical values c < c' coupled by an integer matrix kappa
// (kappa[k][k'] = coefficient of lower point k in the boundary of upper cell
// k').  Offsets shift individual critical values away from c resp. c'.
struct KappaSystem {
    std::vector<std::vector<double>> kappa;  // K rows x K' cols
    std::vector<MorseDatum> lower;           // K data of index p
    std::vector<MorseDatum> upper;           // K' data of index p+1
    std::vector<double> lower_offset;        // optional, defaults 0
    std::vector<double> upper_offset;

    void validate() const;
};

// Squared singular values of sqrt(h/pi) * (D^(p))^{-1} kappa D^(p+1), the
// diagonal matrices carrying quarter-power Hessian factors and e^{-value/h}
// weights evaluated in log space.  Returns min(K,K') eigenvalue estimates,
// descending, zeros included for rank deficiency.
std::vector<RateEstimate> kappa_rates(const KappaSystem& sys, double h);

// Rotationally symmetric K-well ring: kappa is the circulant difference
// matrix with singular values |1 - omega^k|.
struct CirculantWellData {
    int K = 2;
    double c0 = 0, c1 = 1;          // minima / saddle values
    std::vector<double> min_hess;   // eigenvalues at each minimum (all > 0)
    std::vector<double> saddle_hess;  // eigenvalues at a saddle (neg first)
};
std::vector<RateEstimate> circulant_rates(const CirculantWellData& data, double h);
std::vector<double> circulant_singular_values(int K);  // 2*sin(pi k / K), k=1..K

// Critical submanifold M' of dimension p with transverse minimum, upper
// endpoint a non-degenerate index-(p+1) point at level `gap`:
//   (h/pi) * |l1..l_{p+1}(y)|^{1/2} / |l_{p+2}..l_d(y)|^{1/2}
//     * (pi h)^{-p} (kappa * mprime_integral)^2
//     / ((pi h)^{-d/2} basin_integral) * e^{-2 gap/h}.
RateEstimate critical_submanifold_rate(int p, const MorseDatum& upper, double kappa,
                                       double mprime_integral, double basin_integral, double gap,
                                       double h);

}  // namespace wittenlab
