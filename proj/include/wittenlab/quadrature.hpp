#pragma once

#include <functional>
#include <limits>

namespace wittenlab {

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    bool converged = false;
    int panels = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-300;
    int max_panels = 200000;
    // Laplace scale: initial panels near the integrand peak get width ~scale.
    double scale_hint = 0;
};

// Adaptive Gauss quadrature (12-point panels, bisection on the embedded
// two-half estimate).  Infinite endpoints are handled by extending the
// truncated domain until the added tails are negligible; intended for
// Laplace-type integrands e^{-phi/h}.  Throws on non-convergence.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opt = {});

// Laplace integral driver used by the prefactor calculators: integrates the
// given integrand (already containing its h dependence) with panel widths
// keyed to sqrt(h).
double laplace_integral(const std::function<double(double)>& integrand, double a, double b,
                        double h, double rel_tol = 1e-8);

}  // namespace wittenlab
