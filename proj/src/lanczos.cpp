#include "wittenlab/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wittenlab/matrix.hpp"
#include "wittenlab/sym_eig.hpp"

namespace wittenlab {

namespace {

double dot(const double* a, const double* b, int n) {
    double s = 0;
#pragma omp simd reduction(+ : s)
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

// w -= V^T proj twice (classical Gram-Schmidt with reorthogonalization)
void full_reorth(const std::vector<double>& vbuf, int count, int n, double* w) {
    std::vector<double> coef(count);
    for (int pass = 0; pass < 2; ++pass) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < count; ++j) coef[j] = dot(vbuf.data() + (size_t)j * n, w, n);
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int j = 0; j < count; ++j) s += vbuf[(size_t)j * n + i] * coef[j];
            w[i] -= s;
        }
    }
}

}  // namespace

LanczosResult lanczos_smallest(const LinOp& gram, double gram_norm, int k,
                               const LanczosOptions& opt) {
    int n = gram.n;
    if (k + 1 > n) throw std::invalid_argument("lanczos_smallest: k exceeds the dimension");
    double shift = 1.02 * gram_norm + 1e-300;
    LanczosResult res;

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int maxit = std::min(opt.max_iter, n);
    std::vector<double> vbuf;
    vbuf.reserve((size_t)(maxit + 1) * n);
    std::vector<double> v(n), w(n), gv(n);
    for (auto& x : v) x = gauss(rng);
    double nv = std::sqrt(dot(v.data(), v.data(), n));
    for (auto& x : v) x /= nv;
    vbuf.insert(vbuf.end(), v.begin(), v.end());

    std::vector<double> alpha, beta;
    auto apply_shifted = [&](const double* x, double* y) {
        gram.apply(x, gv.data());
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) y[i] = shift * x[i] - gv[i];
    };

    auto extract = [&](int m, LanczosResult& out) {
        // eigenvalues of T_m, descending thetas = smallest of G
        Matrix z = Matrix::identity(m);
        std::vector<double> d(alpha.begin(), alpha.begin() + m);
        std::vector<double> e(beta.begin(), beta.begin() + (m > 0 ? m - 1 : 0));
        Matrix zz = Matrix::identity(m);
        auto theta = tridiag_eig_ql(d, e, &zz);  // ascending
        // residual bounds |beta_m * last component|
        double bm = (int)beta.size() >= m ? beta[m - 1] : 0.0;
        int want = std::min(k + 1, m);
        bool ok = m > k;
        std::vector<double> eigs;
        for (int i = 0; i < want; ++i) {
            int idx = m - 1 - i;  // largest thetas
            double resid = std::fabs(bm * zz(m - 1, idx));
            if (resid > opt.tol * shift * 10) ok = false;
            eigs.push_back(std::max(0.0, shift - theta[idx]));
        }
        std::sort(eigs.begin(), eigs.end());
        out.eigenvalues.assign(eigs.begin(), eigs.begin() + std::min<size_t>(k, eigs.size()));
        out.next_eigenvalue = eigs.size() > (size_t)k ? eigs[k] : shift;
        out.converged = ok;
        out.iterations = m;
        return ok;
    };

    for (int m = 1; m <= maxit; ++m) {
        const double* vm = vbuf.data() + (size_t)(m - 1) * n;
        apply_shifted(vm, w.data());
        double a = dot(vm, w.data(), n);
        alpha.push_back(a);
        for (int i = 0; i < n; ++i) w[i] -= a * vm[i];
        if (m > 1) {
            const double* vp = vbuf.data() + (size_t)(m - 2) * n;
            double bprev = beta[m - 2];
            for (int i = 0; i < n; ++i) w[i] -= bprev * vp[i];
        }
        full_reorth(vbuf, m, n, w.data());
        double b = std::sqrt(dot(w.data(), w.data(), n));
        if (b < 1e-14 * shift) {
            // invariant subspace found
            extract(m, res);
            res.converged = res.converged || (int)alpha.size() >= k + 1;
            return res;
        }
        beta.push_back(b);
        for (int i = 0; i < n; ++i) w[i] /= b;
        vbuf.insert(vbuf.end(), w.begin(), w.end());
        if (m >= k + 2 && (m % opt.check_every == 0 || m == maxit)) {
            if (extract(m, res)) return res;
        }
    }
    extract(std::min<int>((int)alpha.size(), maxit), res);
    res.converged = false;  // iteration cap hit: partial result
    return res;
}

}  // namespace wittenlab
