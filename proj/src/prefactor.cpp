#include "wittenlab/prefactor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wittenlab/jacobi_svd.hpp"

namespace wittenlab {

void MorseDatum::validate() const {
    if (index < 0 || index > dim())
        throw std::invalid_argument("MorseDatum: index out of range");
    for (int i = 0; i < dim(); ++i) {
        if (hessian[i] == 0.0)
            throw std::domain_error(
                "MorseDatum: zero Hessian eigenvalue; this critical point is degenerate, use the "
                "degenerate-minimum rate with a basin integral instead");
        if (i < index && hessian[i] >= 0)
            throw std::invalid_argument("MorseDatum: expected negative eigenvalue among the first "
                                        "`index` entries");
        if (i >= index && hessian[i] <= 0)
            throw std::invalid_argument("MorseDatum: expected positive eigenvalue after the first "
                                        "`index` entries");
    }
}

double MorseDatum::abs_det() const {
    double p = 1;
    for (double l : hessian) p *= std::fabs(l);
    return p;
}

double MorseDatum::neg_product(int count) const {
    double p = 1;
    for (int i = 0; i < count; ++i) p *= std::fabs(hessian[i]);
    return p;
}

double MorseDatum::pos_product_from(int first) const {
    double p = 1;
    for (int i = first; i < dim(); ++i) p *= std::fabs(hessian[i]);
    return p;
}

RateEstimate morse_rate(const MorseDatum& x, const MorseDatum& y, double kappa_sq, double h) {
    if (!(h > 0)) throw std::invalid_argument("morse_rate: h must be positive");
    if (!(y.value > x.value)) throw std::invalid_argument("morse_rate: need y.value > x.value");
    x.validate();
    y.validate();
    if (y.index != x.index + 1)
        throw std::invalid_argument("morse_rate: upper index must be lower index + 1");
    if (!(kappa_sq > 0)) throw std::invalid_argument("morse_rate: kappa^2 must be positive");
    int p = x.index;
    double pref = kappa_sq * (h / M_PI) * y.neg_product(p + 1) / x.neg_product(p) *
                  std::sqrt(x.abs_det() / y.abs_det());
    RateEstimate r;
    r.value = LogValue::from_double(pref) * LogValue::exp_of(-2.0 * (y.value - x.value) / h);
    return r;
}

RateEstimate degenerate_min_rate(const MorseDatum& saddle, double basin_integral, double gap,
                                 double h) {
    if (!(h > 0)) throw std::invalid_argument("degenerate_min_rate: h must be positive");
    saddle.validate();
    if (saddle.index != 1)
        throw std::invalid_argument("degenerate_min_rate: saddle must have index 1");
    if (!(basin_integral > 0))
        throw std::invalid_argument("degenerate_min_rate: basin integral must be positive");
    int d = saddle.dim();
    double num = h * std::fabs(saddle.hessian[0]) / (M_PI * std::sqrt(saddle.abs_det()));
    double den = std::pow(M_PI * h, -0.5 * d) * basin_integral;
    RateEstimate r;
    r.value = LogValue::from_double(num / den) * LogValue::exp_of(-2.0 * gap / h);
    return r;
}

namespace {
double harmonic_mean(double s, double t) { return 2.0 * s * t / (s + t); }
}  // namespace

RateEstimate piecewise_affine_rate(const SlopePair& min_slopes, const SlopePair& max_slopes,
                                   double gap, double h) {
    if (!(h > 0)) throw std::invalid_argument("piecewise_affine_rate: h must be positive");
    if (min_slopes.left == 0 || min_slopes.right == 0 || max_slopes.left == 0 ||
        max_slopes.right == 0)
        throw std::domain_error(
            "piecewise_affine_rate: zero one-sided slope (constant interval); the prefactor of "
            "that case is not covered");
    if (!(min_slopes.left < 0 && min_slopes.right > 0))
        throw std::invalid_argument("piecewise_affine_rate: minimum needs slopes (-,+)");
    if (!(max_slopes.left > 0 && max_slopes.right < 0))
        throw std::invalid_argument("piecewise_affine_rate: maximum needs slopes (+,-)");
    double hm_max = harmonic_mean(std::fabs(max_slopes.right), max_slopes.left);
    double hm_min = harmonic_mean(min_slopes.right, std::fabs(min_slopes.left));
    RateEstimate r;
    r.value = LogValue::from_double(hm_max * hm_min) * LogValue::exp_of(-2.0 * gap / h);
    return r;
}

void KappaSystem::validate() const {
    size_t K = lower.size(), Kp = upper.size();
    if (K == 0 || Kp == 0) throw std::invalid_argument("KappaSystem: empty data");
    if (kappa.size() != K) throw std::invalid_argument("KappaSystem: kappa row count != K");
    for (const auto& row : kappa)
        if (row.size() != Kp) throw std::invalid_argument("KappaSystem: kappa col count != K'");
    if (!lower_offset.empty() && lower_offset.size() != K)
        throw std::invalid_argument("KappaSystem: lower offset size");
    if (!upper_offset.empty() && upper_offset.size() != Kp)
        throw std::invalid_argument("KappaSystem: upper offset size");
    int p = lower.front().index;
    for (const auto& m : lower) {
        m.validate();
        if (m.index != p) throw std::invalid_argument("KappaSystem: mixed lower indices");
    }
    for (const auto& m : upper) {
        m.validate();
        if (m.index != p + 1) throw std::invalid_argument("KappaSystem: upper index must be p+1");
    }
}

std::vector<RateEstimate> kappa_rates(const KappaSystem& sys, double h) {
    if (!(h > 0)) throw std::invalid_argument("kappa_rates: h must be positive");
    sys.validate();
    int K = static_cast<int>(sys.lower.size());
    int Kp = static_cast<int>(sys.upper.size());
    // log of the diagonal weights
    auto lower_log = [&](int k) {
        const MorseDatum& m = sys.lower[k];
        double off = sys.lower_offset.empty() ? 0.0 : sys.lower_offset[k];
        return 0.25 * (std::log(m.neg_product(m.index)) - std::log(m.pos_product_from(m.index))) -
               (m.value + off) / h;
    };
    auto upper_log = [&](int k) {
        const MorseDatum& m = sys.upper[k];
        double off = sys.upper_offset.empty() ? 0.0 : sys.upper_offset[k];
        return 0.25 * (std::log(m.neg_product(m.index)) - std::log(m.pos_product_from(m.index))) -
               (m.value + off) / h;
    };
    // M_{k,k'} = sqrt(h/pi) e^{-lower_log(k)} kappa_{k,k'} e^{upper_log(k')}
    Matrix logmag(K, Kp);
    double s = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k)
        for (int k2 = 0; k2 < Kp; ++k2) {
            if (sys.kappa[k][k2] == 0) {
                logmag(k, k2) = -std::numeric_limits<double>::infinity();
                continue;
            }
            logmag(k, k2) =
                std::log(std::fabs(sys.kappa[k][k2])) - lower_log(k) + upper_log(k2);
            s = std::max(s, logmag(k, k2));
        }
    if (std::isinf(s)) {
        // kappa identically zero
        std::vector<RateEstimate> out(std::min(K, Kp));
        return out;
    }
    Matrix m(K, Kp);
    for (int k = 0; k < K; ++k)
        for (int k2 = 0; k2 < Kp; ++k2)
            if (sys.kappa[k][k2] != 0)
                m(k, k2) = (sys.kappa[k][k2] > 0 ? 1.0 : -1.0) * std::exp(logmag(k, k2) - s);
    Matrix work = (K >= Kp) ? m : m.transposed();
    auto svd = jacobi_svd(work);
    std::vector<RateEstimate> out;
    LogValue scale = LogValue::exp_of(s) * LogValue::from_double(std::sqrt(h / M_PI));
    for (auto it = svd.sigma.rbegin(); it != svd.sigma.rend(); ++it) {
        RateEstimate r;
        LogValue sv = LogValue::from_double(*it) * scale;
        r.value = sv * sv;
        out.push_back(r);
    }
    return out;  // descending
}

std::vector<double> circulant_singular_values(int K) {
    std::vector<double> out;
    for (int k = 1; k <= K; ++k) out.push_back(2.0 * std::fabs(std::sin(M_PI * k / K)));
    return out;
}

std::vector<RateEstimate> circulant_rates(const CirculantWellData& data, double h) {
    if (data.K < 2) throw std::invalid_argument("circulant_rates: need K >= 2");
    KappaSystem sys;
    MorseDatum lower;
    lower.value = data.c0;
    lower.index = 0;
    lower.hessian = data.min_hess;
    MorseDatum upper;
    upper.value = data.c1;
    upper.index = 1;
    upper.hessian = data.saddle_hess;
    sys.lower.assign(data.K, lower);
    sys.upper.assign(data.K, upper);
    sys.kappa.assign(data.K, std::vector<double>(data.K, 0.0));
    for (int k = 0; k < data.K; ++k) {
        sys.kappa[k][k] = 1.0;
        sys.kappa[k][(k + 1) % data.K] = -1.0;
    }
    return kappa_rates(sys, h);
}

RateEstimate critical_submanifold_rate(int p, const MorseDatum& upper, double kappa,
                                       double mprime_integral, double basin_integral, double gap,
                                       double h) {
    if (!(h > 0)) throw std::invalid_argument("critical_submanifold_rate: h must be positive");
    upper.validate();
    if (upper.index != p + 1)
        throw std::invalid_argument("critical_submanifold_rate: upper index must be p+1");
    if (!(basin_integral > 0))
        throw std::domain_error("critical_submanifold_rate: zero basin integral");
    int d = upper.dim();
    double hess = std::sqrt(upper.neg_product(p + 1) / upper.pos_product_from(p + 1));
    double num = std::pow(M_PI * h, -p) * kappa * kappa * mprime_integral * mprime_integral;
    double den = std::pow(M_PI * h, -0.5 * d) * basin_integral;
    RateEstimate r;
    r.value = LogValue::from_double((h / M_PI) * hess * num / den) *
              LogValue::exp_of(-2.0 * gap / h);
    return r;
}

}  // namespace wittenlab
