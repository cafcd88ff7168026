#include "wittenlab/svtoolkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wittenlab/jacobi_svd.hpp"

namespace wittenlab {

namespace {

std::vector<double> sv_desc(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return {};
    Matrix w = a.cols() > a.rows() ? a.transposed() : a;
    auto r = jacobi_svd(w);
    std::vector<double> s(r.sigma.rbegin(), r.sigma.rend());
    return s;
}

double spectral_norm(const Matrix& a) {
    auto s = sv_desc(a);
    return s.empty() ? 0.0 : s.front();
}

// pseudo-inverse via SVD with relative rank cutoff
Matrix pinv(const Matrix& a, double rel_tol = 1e-12) {
    Matrix w = a.cols() > a.rows() ? a.transposed() : a;
    bool transposed = a.cols() > a.rows();
    JacobiOptions opt;
    opt.want_vectors = true;
    auto r = jacobi_svd(w, opt);
    double cut = r.sigma.empty() ? 0 : rel_tol * r.sigma.back();
    // pinv(w) = V diag(1/sigma) U^T
    Matrix vs = r.v;  // n x n
    for (int j = 0; j < vs.cols(); ++j) {
        double s = r.sigma[j] > cut ? 1.0 / r.sigma[j] : 0.0;
        for (int i = 0; i < vs.rows(); ++i) vs(i, j) *= s;
    }
    Matrix piw = matmul_a_bt(vs, r.u);  // n x m
    return transposed ? piw.transposed() : piw;
}

}  // namespace

Subspace::Subspace(const Matrix& spanning_columns) {
    frame_ = orthonormalize_columns(spanning_columns);
}

Subspace Subspace::from_orthonormal(const Matrix& frame) {
    Matrix g = matmul_at_b(frame, frame);
    for (int i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    if (g.max_abs() > 1e-12)
        throw std::invalid_argument("Subspace: frame is not orthonormal to 1e-12");
    Subspace s;
    s.frame_ = frame;
    return s;
}

Matrix Subspace::projector() const { return matmul_a_bt(frame_, frame_); }

double vec_d(const Subspace& e, const Subspace& f) {
    if (e.ambient() != f.ambient())
        throw std::invalid_argument("vec_d: subspaces of different ambient dimension");
    if (e.dim() == 0) return 0.0;
    // ||P_E - P_F P_E|| = ||(I - P_F) E|| for an orthonormal frame E
    Matrix fe = matmul_at_b(f.frame(), e.frame());  // kF x kE
    Matrix m = e.frame() - f.frame() * fe;
    return spectral_norm(m);
}

double tau(const TauBudget& budget) {
    double t = 1.0;
    for (double e : budget.eps) {
        if (!(e >= 0 && e < 1)) throw std::domain_error("tau: budget entry outside [0,1)");
        t *= (1.0 + e) / (1.0 - e);
    }
    return t;
}

double eps_unitary_defect(const Matrix& a) {
    Matrix ata = matmul_at_b(a, a);
    for (int i = 0; i < ata.rows(); ++i) ata(i, i) -= 1.0;
    Matrix aat = matmul_a_bt(a, a);
    for (int i = 0; i < aat.rows(); ++i) aat(i, i) -= 1.0;
    return std::max(spectral_norm(ata), spectral_norm(aat));
}

std::vector<double> singular_values_of(const Matrix& a) {
    auto s = sv_desc(a);
    std::reverse(s.begin(), s.end());
    return s;
}

ProjectedSvReport check_projected_sv(const Matrix& b_on_f, const Subspace& e, const Subspace& f,
                                     const Subspace& g) {
    if (b_on_f.rows() != f.dim() || b_on_f.cols() != f.dim())
        throw std::invalid_argument("check_projected_sv: B must act on F in frame coordinates");
    ProjectedSvReport rep;
    rep.eps1 = vec_d(e, f) + vec_d(f, e);
    rep.eps2 = vec_d(f, g) + vec_d(g, f);
    rep.hypothesis_ok = rep.eps1 < 1.0 && rep.eps2 < 1.0;
    if (!rep.hypothesis_ok) return rep;
    rep.bound = std::sqrt(tau({{rep.eps1 * rep.eps1, rep.eps2 * rep.eps2}}));

    auto mu_b = sv_desc(b_on_f);
    // tilde B = (G^T F) B (F^T E)
    Matrix gf = matmul_at_b(g.frame(), f.frame());
    Matrix fe = matmul_at_b(f.frame(), e.frame());
    Matrix tb = gf * b_on_f * fe;
    auto mu_t = sv_desc(tb);

    rep.pass = true;
    size_t n = std::max(mu_b.size(), mu_t.size());
    for (size_t l = 0; l < n; ++l) {
        double mb = l < mu_b.size() ? mu_b[l] : 0.0;
        double mt = l < mu_t.size() ? mu_t[l] : 0.0;
        double scale = mu_b.empty() ? 1.0 : std::max(1e-300, mu_b.front());
        if (mb <= 1e-14 * scale && mt <= 1e-14 * scale) continue;
        if (mt <= 0) {
            rep.ratio.push_back(std::numeric_limits<double>::infinity());
            rep.pass = false;
            continue;
        }
        double r = mb / mt;
        rep.ratio.push_back(r);
        if (!(r <= rep.bound * (1 + 1e-10) && r >= (1 - 1e-10) / rep.bound)) rep.pass = false;
    }
    return rep;
}

AdditiveReport check_additive(const Matrix& b1, const Matrix& b2) {
    if (b1.rows() != b2.rows() || b1.cols() != b2.cols())
        throw std::invalid_argument("check_additive: shape mismatch");
    AdditiveReport rep;
    rep.norm_diff = spectral_norm(b2 - b1);
    auto s1 = sv_desc(b1);
    auto s2 = sv_desc(b2);
    rep.pass = true;
    for (size_t l = 0; l < s1.size(); ++l) {
        double gap = std::fabs(s2[l] - s1[l]);
        rep.gap.push_back(gap);
        if (gap > rep.norm_diff * (1 + 1e-12) + 1e-14 * (s1.front() + 1)) rep.pass = false;
    }
    return rep;
}

FactorizationReport check_factorization(const Matrix& b, const Subspace& e, const Subspace& f,
                                        const Subspace& g, const Matrix& c) {
    FactorizationReport rep;
    Matrix be = b * e.frame();                        // n x kE
    Matrix pf_be = f.frame() * matmul_at_b(f.frame(), be);
    Matrix resid = be - c * pf_be;
    double scale = std::max(1.0, spectral_norm(be));
    rep.residual = spectral_norm(resid) / scale;
    rep.hypothesis_ok = rep.residual <= 1e-10;
    if (!rep.hypothesis_ok) return rep;

    Matrix pg_be = g.frame() * matmul_at_b(g.frame(), be);
    Matrix r_eff = (pg_be - pf_be) * pinv(pf_be);
    rep.r_norm = spectral_norm(r_eff);
    rep.bound = 2.0 * (vec_d(f, g) + vec_d(g, f)) * spectral_norm(c);
    rep.pass = rep.r_norm <= rep.bound + 1e-13;
    return rep;
}

MultAddReport check_multadd(const MultAddScenario& sc) {
    MultAddReport rep;
    const Matrix& b = sc.b;
    double bnorm = std::max(1e-300, spectral_norm(b));

    // 1. commutation of B with P_F
    Matrix pf = sc.f.projector();
    Matrix comm = pf * b - b * pf;
    if (spectral_norm(comm) > 1e-10 * bnorm) {
        rep.diagnosis = "hypothesis 1 fails: B does not commute with the projection on F";
        return rep;
    }
    // 2. fixed finite rank of P_F B P_F
    Matrix bf = matmul_at_b(sc.f.frame(), b * sc.f.frame());
    auto mu_f = sv_desc(bf);
    int l0 = 0;
    for (double s : mu_f)
        if (s > 1e-10 * bnorm) ++l0;
    rep.rank_l0 = l0;
    if (l0 == 0) {
        rep.diagnosis = "hypothesis 2 degenerate: P_F B P_F has rank zero";
        return rep;
    }
    // 3. left-multiple factorization of B|_{E'}
    Matrix bep = b * sc.e_prime.frame();
    Matrix pf_bep = sc.f.frame() * matmul_at_b(sc.f.frame(), bep);
    Matrix c = bep * pinv(pf_bep);
    double fact_resid = spectral_norm(bep - c * pf_bep) / std::max(1.0, spectral_norm(bep));
    if (fact_resid > 1e-8) {
        rep.diagnosis = "hypothesis 3 fails: B|_{E'} is not a left multiple of P_F B|_{E'}";
        return rep;
    }
    double cnorm = std::max(1.0, spectral_norm(c));

    // distances and the two inequality budgets
    Matrix e_all(b.rows(), sc.e_prime.dim() + sc.e_second.dim());
    for (int j = 0; j < sc.e_prime.dim(); ++j)
        for (int i = 0; i < b.rows(); ++i) e_all(i, j) = sc.e_prime.frame()(i, j);
    for (int j = 0; j < sc.e_second.dim(); ++j)
        for (int i = 0; i < b.rows(); ++i)
            e_all(i, sc.e_prime.dim() + j) = sc.e_second.frame()(i, j);
    Subspace e(e_all);
    double dEF = vec_d(e, sc.f) + vec_d(sc.f, e);
    double dFG = vec_d(sc.f, sc.g) + vec_d(sc.g, sc.f);

    Matrix pg_bep = matmul_at_b(sc.g.frame(), bep);  // G-coords of P_G B|_{E'}
    auto mu_gp = sv_desc(pg_bep);
    int l1 = 0;
    for (double s : mu_gp)
        if (s > 1e-10 * bnorm) ++l1;
    Matrix pg_be = matmul_at_b(sc.g.frame(), b * e.frame());
    auto mu_ge = sv_desc(pg_be);

    double mu_l1 = l1 > 0 ? mu_gp[l1 - 1] : 0.0;
    double mu_l0_ge = (int)mu_ge.size() >= l0 ? mu_ge[l0 - 1] : 0.0;
    double mu_l0_f = mu_f[l0 - 1];
    double bsecond = sc.e_second.dim() > 0 ? spectral_norm(b * sc.e_second.frame()) : 0.0;

    double budget1 = dEF + cnorm * dFG;
    double budget2 = bsecond * (1.0 / std::max(1e-300, mu_l1) +
                                cnorm * dFG / std::max(1e-300, std::max(mu_l0_ge, mu_l0_f)));
    if (budget1 > 5 * sc.rho || budget2 > 5 * sc.rho) {
        rep.diagnosis = "hypothesis 4 fails: inequality budgets exceed the rho scale";
        return rep;
    }
    rep.hypotheses_ok = true;

    rep.budget = 50.0 * sc.rho;  // empirical certified slack
    rep.pass = true;
    for (int l = 0; l < l0; ++l) {
        double ge = l < (int)mu_ge.size() ? mu_ge[l] : 0.0;
        double gap = std::fabs(ge / mu_f[l] - 1.0);
        rep.rel_gap.push_back(gap);
        if (gap > rep.budget) rep.pass = false;
    }
    if ((int)mu_ge.size() > l0 && mu_ge[l0 - 1] > 0) {
        rep.tail_ratio = mu_ge[l0] / mu_ge[l0 - 1];
        if (rep.tail_ratio > rep.budget) rep.pass = false;
    }
    return rep;
}

}  // namespace wittenlab
