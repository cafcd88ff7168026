#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wittenlab/svtoolkit.hpp"

using namespace wittenlab;

namespace {

Matrix span1(int n, std::vector<double> v) {
    Matrix m(n, 1);
    for (int i = 0; i < n; ++i) m(i, 0) = v[i];
    return m;
}

}  // namespace

TEST_CASE("vec_d basics and triangle inequality") {
    Subspace e1(span1(2, {1, 0}));
    Subspace e2(span1(2, {0, 1}));
    CHECK(vec_d(e1, e1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(vec_d(e1, e2) == doctest::Approx(1.0).epsilon(1e-12));
    for (double th : {0.1, 0.4, 1.1}) {
        Subspace f(span1(2, {std::cos(th), std::sin(th)}));
        CHECK(vec_d(e1, f) == doctest::Approx(std::fabs(std::sin(th))).epsilon(1e-12));
    }
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 8;
        Subspace a = Subspace(oracles::random_matrix(n, 1 + (int)(rng() % 3), rng));
        Subspace b = Subspace(oracles::random_matrix(n, 1 + (int)(rng() % 3), rng));
        Subspace c = Subspace(oracles::random_matrix(n, 1 + (int)(rng() % 3), rng));
        CHECK(vec_d(a, c) <= vec_d(a, b) + vec_d(b, c) + 1e-10);
    }
    // d(E,F) = 0 iff E inside F
    std::mt19937_64 rng2(3);
    Matrix big = oracles::random_frame(6, 3, rng2);
    Matrix sub(6, 1);
    for (int i = 0; i < 6; ++i) sub(i, 0) = big(i, 0) + 0.5 * big(i, 1);
    CHECK(vec_d(Subspace(sub), Subspace::from_orthonormal(big)) <= 1e-12);
}

TEST_CASE("tau products") {
    CHECK(tau({{}}) == 1.0);
    CHECK(tau({{0.5}}) == doctest::Approx(3.0));
    CHECK(tau({{0.1, 0.1}}) == doctest::Approx((1.1 / 0.9) * (1.1 / 0.9)));
    CHECK_THROWS(tau({{1.0}}));
}

TEST_CASE("eps-unitary defect") {
    CHECK(eps_unitary_defect(Matrix::identity(4)) == doctest::Approx(0.0).epsilon(1e-14));
    Matrix rot(2, 2);
    double c = std::cos(0.3), s = std::sin(0.3), scale = std::sqrt(1.1);
    rot(0, 0) = scale * c;
    rot(0, 1) = -scale * s;
    rot(1, 0) = scale * s;
    rot(1, 1) = scale * c;
    CHECK(eps_unitary_defect(rot) == doctest::Approx(0.1).epsilon(1e-12));

    // random near-orthogonal frame: defect matches the Gram matrix directly
    std::mt19937_64 rng(7);
    Matrix q = oracles::random_frame(10, 4, rng);
    Matrix pert = q;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 4; ++j) pert(i, j) += 0.01 * oracles::random_matrix(1, 1, rng)(0, 0);
    Matrix gram = matmul_at_b(pert, pert);
    for (int i = 0; i < 4; ++i) gram(i, i) -= 1.0;
    auto gs = singular_values_of(gram);
    // rectangular frame: A A^T - I has norm at least 1 on the orthocomplement
    CHECK(eps_unitary_defect(pert) >= gs.back() - 1e-12);
    CHECK(eps_unitary_defect(pert) >= 1.0 - 1e-12);
    // the isometry-defect side alone:
    Matrix ata = matmul_at_b(pert, pert);
    for (int i = 0; i < 4; ++i) ata(i, i) -= 1.0;
    CHECK(singular_values_of(ata).back() == doctest::Approx(gs.back()).epsilon(1e-12));
}

TEST_CASE("epsilon-unitary sandwich bounds singular value ratios (1000 trials)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 6;
        double e1 = 0.3 * u(rng), e2 = 0.3 * u(rng);
        // C = orthogonal * diag in [sqrt(1-e1), sqrt(1+e1)]
        auto near_unitary = [&](double eps) {
            Matrix q1 = oracles::random_frame(n, n, rng);
            Matrix q2 = oracles::random_frame(n, n, rng);
            Matrix d(n, n);
            for (int i = 0; i < n; ++i)
                d(i, i) = std::sqrt(1.0 - eps + 2 * eps * u(rng));
            return q1 * d * q2.transposed();
        };
        Matrix c = near_unitary(e1);
        Matrix a = near_unitary(e2);
        Matrix b = oracles::random_matrix(n, n, rng);
        double de1 = eps_unitary_defect(c), de2 = eps_unitary_defect(a);
        double bound = std::sqrt(tau({{de1, de2}}));
        auto mb = singular_values_of(b);
        auto mc = singular_values_of(c * b * a);
        for (int i = 0; i < n; ++i) {
            double r = mc[i] / mb[i];
            if (!(r <= bound * (1 + 1e-10) && r >= 1.0 / bound * (1 - 1e-10))) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("projected singular values stay inside the tau budget (1000 trials)") {
    std::mt19937_64 rng(13);
    int violations = 0, used = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 6, k = 3;
        Matrix f = oracles::random_frame(n, k, rng);
        // E and G as perturbed copies of F
        auto tilt = [&](double amp) {
            Matrix m(n, k);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < k; ++j) m(i, j) = f(i, j) + amp * oracles::random_matrix(1, 1, rng)(0, 0);
            return Subspace(m);
        };
        Subspace e = tilt(0.15), g = tilt(0.15);
        Matrix b = oracles::random_matrix(k, k, rng);
        auto rep = check_projected_sv(b, e, Subspace::from_orthonormal(f), g);
        if (!rep.hypothesis_ok) continue;
        ++used;
        if (!rep.pass) ++violations;
    }
    CHECK(violations == 0);
    CHECK(used > 900);

    // identical subspaces: ratios exactly 1
    std::mt19937_64 rng2(17);
    Matrix f = oracles::random_frame(8, 4, rng2);
    Subspace F = Subspace::from_orthonormal(f);
    Matrix b = oracles::random_matrix(4, 4, rng2);
    auto rep = check_projected_sv(b, F, F, F);
    REQUIRE(rep.hypothesis_ok);
    for (double r : rep.ratio) CHECK(r == doctest::Approx(1.0).epsilon(1e-10));

    // near-degenerate E with eps1 ~ 0.3: bound still holds
    std::mt19937_64 rng3(19);
    Matrix f3 = oracles::random_frame(6, 2, rng3);
    Matrix e3 = f3;
    for (int i = 0; i < 6; ++i) e3(i, 0) += 0.31 * oracles::random_matrix(1, 1, rng3)(0, 0);
    auto rep3 = check_projected_sv(oracles::random_matrix(2, 2, rng3), Subspace(e3),
                                   Subspace::from_orthonormal(f3), Subspace::from_orthonormal(f3));
    if (rep3.hypothesis_ok) CHECK(rep3.pass);
}

TEST_CASE("additive Weyl bound, exact constants (1000 trials)") {
    std::mt19937_64 rng(23);
    {
        Matrix b = oracles::random_matrix(7, 5, rng);
        auto same = check_additive(b, b);
        CHECK(same.pass);
        for (double g : same.gap) CHECK(g == 0.0);
        Matrix shifted = b;
        Matrix b2 = b;
        for (int i = 0; i < 5; ++i) b2(i, i) += 1e-3;  // epsilon I (on the square part)
        auto rep = check_additive(b, b2);
        CHECK(rep.pass);
    }
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int m = 4 + (int)(rng() % 5), n = 4 + (int)(rng() % 5);
        Matrix b1 = oracles::random_matrix(m, n, rng);
        Matrix b2 = b1;
        double amp = 0.2 * std::uniform_real_distribution<double>(0, 1)(rng);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) b2(i, j) += amp * oracles::random_matrix(1, 1, rng)(0, 0);
        if (!check_additive(b1, b2).pass) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("factorization transport to a nearby subspace (1000 trials)") {
    std::mt19937_64 rng(29);
    // G = F: R must vanish
    {
        int n = 8, k = 3;
        Matrix f = oracles::random_frame(n, k, rng);
        Subspace F = Subspace::from_orthonormal(f);
        Subspace E(oracles::random_matrix(n, k, rng));
        // B keeping the factorization exact: B = C P_F
        Matrix c = oracles::random_matrix(n, n, rng);
        Matrix b = c * F.projector();
        auto rep = check_factorization(b, E, F, F, c);
        REQUIRE(rep.hypothesis_ok);
        CHECK(rep.r_norm <= 1e-10);
        CHECK(rep.pass);
    }
    int violations = 0, used = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 8, k = 2 + (int)(rng() % 3);
        Matrix f = oracles::random_frame(n, k, rng);
        Subspace F = Subspace::from_orthonormal(f);
        Subspace E(oracles::random_matrix(n, k, rng));
        Matrix c = oracles::random_matrix(n, n, rng);
        Matrix b = c * F.projector();
        // tilt G away from F by a small angle
        Matrix gcols = f;
        double amp = 0.05 * std::uniform_real_distribution<double>(0, 1)(rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) gcols(i, j) += amp * oracles::random_matrix(1, 1, rng)(0, 0);
        Subspace G(gcols);
        auto rep = check_factorization(b, E, F, G, c);
        if (!rep.hypothesis_ok) continue;
        ++used;
        if (!rep.pass) ++violations;
    }
    CHECK(violations == 0);
    CHECK(used > 950);
}

namespace {

// Construct a multadd scenario at error scale rho, per the hypotheses:
// F = F1 + F2 with B = F1 S F1^T (commutes with P_F, rank l0 = dim F1),
// E' a rho-tilt of F1, E'' a rho-tilt of F2 (so ||B|_{E''}|| = O(rho)),
// G a rho-tilt of all of F.  Then dim E = dim F = dim G and both budget
// inequalities hold at scale rho.
MultAddScenario make_multadd(std::mt19937_64& rng, double rho, int n = 16, int l0 = 3,
                             int k2 = 2) {
    MultAddScenario sc;
    std::uniform_real_distribution<double> u(0.5, 1.5);
    Matrix f_all = oracles::random_frame(n, l0 + k2, rng);
    Matrix f1(n, l0), f2(n, k2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < l0; ++j) f1(i, j) = f_all(i, j);
        for (int j = 0; j < k2; ++j) f2(i, j) = f_all(i, l0 + j);
    }
    Matrix srank(l0, l0);
    for (int i = 0; i < l0; ++i) srank(i, i) = u(rng);
    sc.b = f1 * srank * f1.transposed();
    auto tilt = [&](const Matrix& base, double amp) {
        Matrix m = base;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) += amp * oracles::random_matrix(1, 1, rng)(0, 0);
        return Subspace(m);
    };
    sc.f = Subspace::from_orthonormal(f_all);
    sc.e_prime = tilt(f1, 0.2 * rho);
    sc.e_second = tilt(f2, 0.2 * rho);
    sc.g = tilt(f_all, 0.2 * rho);
    sc.rho = rho;
    return sc;
}

}  // namespace

TEST_CASE("multadd: exact case and constructed instances") {
    std::mt19937_64 rng(31);
    // F = G = E, B commuting: exact equality of singular values
    {
        int n = 10, k = 3;
        Matrix f = oracles::random_frame(n, k, rng);
        Matrix s(k, k);
        for (int i = 0; i < k; ++i) s(i, i) = 1.0 + i;
        MultAddScenario sc;
        sc.b = f * s * f.transposed();
        sc.f = Subspace::from_orthonormal(f);
        sc.g = sc.f;
        sc.e_prime = sc.f;
        sc.e_second = Subspace(Matrix(n, 0));
        sc.rho = 1e-12;
        auto rep = check_multadd(sc);
        REQUIRE(rep.hypotheses_ok);
        CHECK(rep.rank_l0 == k);
        for (double g : rep.rel_gap) CHECK(g <= 1e-9);
    }
    // commutation violation is a diagnosed skip, not a failure
    {
        MultAddScenario sc = make_multadd(rng, 1e-3);
        sc.b(0, 1) += 1.0;
        auto rep = check_multadd(sc);
        CHECK(!rep.hypotheses_ok);
        CHECK(!rep.diagnosis.empty());
    }
    // constructed instances at rho = 1e-3
    int pass = 0, total = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto sc = make_multadd(rng, 1e-3);
        auto rep = check_multadd(sc);
        if (!rep.hypotheses_ok) continue;
        ++total;
        if (rep.pass) ++pass;
    }
    CHECK(total > 30);
    CHECK(pass == total);
}

TEST_CASE("multadd gap scales linearly in rho") {
    std::mt19937_64 rng(37);
    std::vector<double> rhos = {3e-2, 1e-2, 3e-3, 1e-3};
    std::vector<double> gaps;
    for (double rho : rhos) {
        double worst = 0;
        int got = 0;
        for (int trial = 0; trial < 20; ++trial) {
            auto sc = make_multadd(rng, rho);
            auto rep = check_multadd(sc);
            if (!rep.hypotheses_ok) continue;
            ++got;
            for (double g : rep.rel_gap) worst = std::max(worst, g);
            worst = std::max(worst, rep.tail_ratio);
        }
        REQUIRE(got > 10);
        gaps.push_back(worst);
    }
    // log-log slope of worst gap against rho close to 1
    double slope = std::log(gaps.front() / gaps.back()) / std::log(rhos.front() / rhos.back());
    CHECK(slope == doctest::Approx(1.0).epsilon(0.35));
    // within the certified slack at every rho
    for (size_t i = 0; i < rhos.size(); ++i) CHECK(gaps[i] <= 50 * rhos[i]);
}
