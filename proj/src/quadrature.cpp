#include "wittenlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wittenlab {

namespace {

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration
// on the Legendre recurrence (machine precision, no constant tables).
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) {
        x.resize(n);
        w.resize(n);
        for (int i = 0; i < n; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                double dx = p1 / dp;
                xi -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            x[i] = xi;
            w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }
};

const GaussRule& rule12() {
    static GaussRule r(12);
    return r;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& r = rule12();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return s * half;
}

struct Segment {
    double a, b, whole;
};

QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opt) {
    QuadratureResult res;
    std::vector<Segment> stack;
    // seed panels no wider than the Laplace scale when a hint is given
    int seeds = 8;
    if (opt.scale_hint > 0)
        seeds = std::max(seeds, std::min(4096, (int)((b - a) / opt.scale_hint)));
    for (int k = 0; k < seeds; ++k) {
        double sa = a + (b - a) * k / seeds, sb = a + (b - a) * (k + 1) / seeds;
        stack.push_back({sa, sb, panel(f, sa, sb)});
    }
    double total = 0;
    for (auto& s : stack) total += s.whole;
    double sum = 0, err = 0;
    int panels = 0;
    while (!stack.empty()) {
        if (++panels > opt.max_panels)
            throw std::runtime_error("integrate: panel budget exhausted (non-convergent integral?)");
        Segment s = stack.back();
        stack.pop_back();
        double mid = 0.5 * (s.a + s.b);
        double left = panel(f, s.a, mid), right = panel(f, mid, s.b);
        double delta = left + right - s.whole;
        double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
        double local_tol = tol * std::max(1e-3, (s.b - s.a) / (b - a));
        if (std::fabs(delta) <= local_tol || (s.b - s.a) < 1e-14 * (b - a)) {
            sum += left + right;
            err += std::fabs(delta);
        } else {
            stack.push_back({s.a, mid, left});
            stack.push_back({mid, s.b, right});
            total += delta;
        }
    }
    res.value = sum;
    res.error_estimate = err;
    res.panels = panels;
    res.converged = err <= std::max(opt.abs_tol, 4 * opt.rel_tol * std::fabs(sum)) + 1e-300;
    return res;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opt) {
    bool inf_a = std::isinf(a), inf_b = std::isinf(b);
    if (!inf_a && !inf_b) return integrate_finite(f, a, b, opt);

    // expand a truncated window until both tails are negligible
    double base = opt.scale_hint > 0 ? opt.scale_hint : 1.0;
    double lo = inf_a ? -base : a;
    double hi = inf_b ? base : b;
    QuadratureResult res = integrate_finite(f, lo, hi, opt);
    for (int round = 0; round < 60; ++round) {
        bool grew = false;
        double tail_tol = std::max(opt.abs_tol, 0.1 * opt.rel_tol * std::fabs(res.value));
        if (inf_a) {
            double nlo = lo - std::max(base, 0.5 * (hi - lo));
            auto tail = integrate_finite(f, nlo, lo, opt);
            if (std::fabs(tail.value) > tail_tol) {
                res.value += tail.value;
                res.error_estimate += tail.error_estimate;
                lo = nlo;
                grew = true;
            }
        }
        if (inf_b) {
            double nhi = hi + std::max(base, 0.5 * (hi - lo));
            auto tail = integrate_finite(f, hi, nhi, opt);
            if (std::fabs(tail.value) > tail_tol) {
                res.value += tail.value;
                res.error_estimate += tail.error_estimate;
                hi = nhi;
                grew = true;
            }
        }
        if (!grew) {
            res.converged = true;
            return res;
        }
        if (!std::isfinite(res.value))
            throw std::runtime_error("integrate: divergent integral on unbounded domain");
    }
    throw std::runtime_error("integrate: tails kept growing (non-convergent integral)");
}

double laplace_integral(const std::function<double(double)>& integrand, double a, double b,
                        double h, double rel_tol) {
    if (!(h > 0)) throw std::invalid_argument("laplace_integral: h must be positive");
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.scale_hint = std::sqrt(h);
    auto r = integrate(integrand, a, b, opt);
    if (!r.converged) throw std::runtime_error("laplace_integral: quadrature did not converge");
    return r.value;
}

}  // namespace wittenlab
