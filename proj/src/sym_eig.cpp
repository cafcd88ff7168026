#include "wittenlab/sym_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wittenlab {

std::vector<double> sym_eig_jacobi(const Matrix& a_in, Matrix* vectors, double tol,
                                   int max_sweeps) {
    int n = a_in.rows();
    if (a_in.cols() != n) throw std::invalid_argument("sym_eig_jacobi: matrix not square");
    Matrix a = a_in;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0, dia = 0;
        for (int i = 0; i < n; ++i) {
            dia += std::fabs(a(i, i));
            for (int j = i + 1; j < n; ++j) off += std::fabs(a(i, j));
        }
        if (off <= tol * (dia + off)) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) <= tol * (std::fabs(a(p, p)) + std::fabs(a(q, q)))) continue;
                double zeta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = ((zeta >= 0) ? 1.0 : -1.0) /
                           (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(order[i], order[i]);
    if (vectors) {
        *vectors = Matrix(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) (*vectors)(i, j) = v(i, order[j]);
    }
    return eig;
}

std::vector<double> tridiag_eig_ql(std::vector<double> d, std::vector<double> e, Matrix* z) {
    int n = static_cast<int>(d.size());
    e.resize(n, 0.0);  // e[n-1] used as workspace
    if (n == 0) return {};
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 80) throw std::runtime_error("tridiag_eig_ql: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + ((g >= 0) ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < z->rows(); ++k) {
                            double zki1 = (*z)(k, i + 1), zki = (*z)(k, i);
                            (*z)(k, i + 1) = s * zki + c * zki1;
                            (*z)(k, i) = c * zki - s * zki1;
                        }
                    }
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // sort ascending (and the eigenvector columns along)
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = d[order[i]];
    if (z) {
        Matrix zs(z->rows(), n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < z->rows(); ++k) zs(k, j) = (*z)(k, order[j]);
        *z = zs;
    }
    return out;
}

}  // namespace wittenlab
