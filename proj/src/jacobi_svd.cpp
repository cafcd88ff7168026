#include "wittenlab/jacobi_svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wittenlab {

namespace {

struct Work {
    int m = 0, n = 0;
    std::vector<double> col;    // column-major m x n
    std::vector<double> vcol;   // column-major n x n accumulated rotations
    std::vector<double> nrm2;   // squared column norms
    bool want_vectors = false;

    double* c(int j) { return col.data() + static_cast<size_t>(j) * m; }
    double* vc(int j) { return vcol.data() + static_cast<size_t>(j) * n; }

    void refresh_norms() {
        for (int j = 0; j < n; ++j) {
            const double* a = c(j);
            double s = 0;
            for (int i = 0; i < m; ++i) s += a[i] * a[i];
            nrm2[j] = s;
        }
    }

    // de Rijk pivoting: columns sorted by norm, descending
    void sort_columns() {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](int a, int b) { return nrm2[a] > nrm2[b]; });
        std::vector<double> tmp(col.size());
        for (int j = 0; j < n; ++j)
            std::copy(c(perm[j]), c(perm[j]) + m, tmp.data() + static_cast<size_t>(j) * m);
        col.swap(tmp);
        if (want_vectors) {
            std::vector<double> vt(vcol.size());
            for (int j = 0; j < n; ++j)
                std::copy(vc(perm[j]), vc(perm[j]) + n, vt.data() + static_cast<size_t>(j) * n);
            vcol.swap(vt);
        }
        std::vector<double> nt(n);
        for (int j = 0; j < n; ++j) nt[j] = nrm2[perm[j]];
        nrm2.swap(nt);
    }

    // Returns true if a rotation was applied to the pair.
    bool rotate_pair(int i, int j, double tol) {
        double alpha = nrm2[i], beta = nrm2[j];
        if (alpha == 0.0 || beta == 0.0) return false;
        double* ai = c(i);
        double* aj = c(j);
        double gamma = 0;
        for (int k = 0; k < m; ++k) gamma += ai[k] * aj[k];
        if (std::fabs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) return false;

        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = ((zeta >= 0) ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double cs = 1.0 / std::sqrt(1.0 + t * t);
        double sn = cs * t;

        for (int k = 0; k < m; ++k) {
            double x = ai[k], y = aj[k];
            ai[k] = cs * x - sn * y;
            aj[k] = sn * x + cs * y;
        }
        if (want_vectors) {
            double* vi = vc(i);
            double* vj = vc(j);
            for (int k = 0; k < n; ++k) {
                double x = vi[k], y = vj[k];
                vi[k] = cs * x - sn * y;
                vj[k] = sn * x + cs * y;
            }
        }
        nrm2[i] = alpha - t * gamma;
        nrm2[j] = beta + t * gamma;
        return true;
    }
};

SvdResult finalize(Work& w, int sweeps, bool converged) {
    SvdResult r;
    r.sweeps = sweeps;
    r.converged = converged;
    std::vector<int> order(w.n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> sig(w.n);
    for (int j = 0; j < w.n; ++j) {
        const double* a = w.c(j);
        double s = 0;
        for (int i = 0; i < w.m; ++i) s += a[i] * a[i];
        sig[j] = std::sqrt(s);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    r.sigma.resize(w.n);
    for (int j = 0; j < w.n; ++j) r.sigma[j] = sig[order[j]];
    if (w.want_vectors) {
        r.u = Matrix(w.m, w.n);
        r.v = Matrix(w.n, w.n);
        for (int j = 0; j < w.n; ++j) {
            int src = order[j];
            double s = sig[src];
            const double* a = w.c(src);
            if (s > 0)
                for (int i = 0; i < w.m; ++i) r.u(i, j) = a[i] / s;
            const double* v = w.vc(src);
            for (int i = 0; i < w.n; ++i) r.v(i, j) = v[i];
        }
    }
    return r;
}

Work make_work(const Matrix& a, const JacobiOptions& opt) {
    Work w;
    w.m = a.rows();
    w.n = a.cols();
    w.want_vectors = opt.want_vectors;
    w.col.resize(static_cast<size_t>(w.m) * w.n);
    for (int i = 0; i < w.m; ++i)
        for (int j = 0; j < w.n; ++j) w.col[static_cast<size_t>(j) * w.m + i] = a(i, j);
    if (w.want_vectors) {
        w.vcol.assign(static_cast<size_t>(w.n) * w.n, 0.0);
        for (int j = 0; j < w.n; ++j) w.vc(j)[j] = 1.0;
    }
    w.nrm2.resize(w.n);
    w.refresh_norms();
    return w;
}

}  // namespace

SvdResult jacobi_svd_serial(const Matrix& a, const JacobiOptions& opt) {
    Work w = make_work(a, opt);
    int sweep = 0;
    bool converged = false;
    for (; sweep < opt.max_sweeps; ++sweep) {
        w.refresh_norms();
        w.sort_columns();
        long rotations = 0;
        for (int i = 0; i < w.n - 1; ++i)
            for (int j = i + 1; j < w.n; ++j)
                if (w.rotate_pair(i, j, opt.tol)) ++rotations;
        if (rotations == 0) {
            converged = true;
            break;
        }
    }
    return finalize(w, sweep, converged);
}

SvdResult jacobi_svd(const Matrix& a, const JacobiOptions& opt) {
    if (!opt.parallel) return jacobi_svd_serial(a, opt);
    Work w = make_work(a, opt);
    int n = w.n;
    int np = (n % 2 == 0) ? n : n + 1;  // pad with a bye for odd n
    std::vector<int> players(np);
    int sweep = 0;
    bool converged = false;
    for (; sweep < opt.max_sweeps; ++sweep) {
        w.refresh_norms();
        w.sort_columns();
        std::iota(players.begin(), players.end(), 0);
        long rotations = 0;
        for (int round = 0; round < np - 1; ++round) {
            long rot_round = 0;
            // Disjoint column pairs: safe to rotate concurrently.
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : rot_round)
            for (int k = 0; k < np / 2; ++k) {
                int i = players[k];
                int j = players[np - 1 - k];
                if (i >= n || j >= n) continue;
                if (i > j) std::swap(i, j);
                if (w.rotate_pair(i, j, opt.tol)) ++rot_round;
            }
            rotations += rot_round;
            // rotate players 1..np-1 (player 0 fixed)
            int last = players[np - 1];
            for (int k = np - 1; k > 1; --k) players[k] = players[k - 1];
            players[1] = last;
        }
        if (rotations == 0) {
            converged = true;
            break;
        }
    }
    return finalize(w, sweep, converged);
}

}  // namespace wittenlab
