#include <stdexcept>
#include <cmath>
#include <map>

#include "doctest.h"
#include "wittenlab/grid.hpp"
#include "wittenlab/persistence.hpp"
#include "wittenlab/relative_betti.hpp"

using namespace wittenlab;

namespace {
const double pi = 3.14159265358979323846;

SampledField from_values(GridTopology t, std::vector<double> v) {
    SampledField f;
    f.topology = t;
    f.values = std::move(v);
    return f;
}

std::map<int, int> essential_counts(const BarCode& bc) {
    std::map<int, int> c;
    for (const auto& b : bc.bars)
        if (!b.finite()) ++c[b.degree];
    return c;
}
}  // namespace

TEST_CASE("lower-star filtration values") {
    auto f = from_values(GridTopology::circle(4, 1.0), {0, 1, 0, 1});
    auto fil = build_filtration(f);
    for (int v = 0; v < 4; ++v) CHECK(fil.value[v] == f.values[v]);
    for (int e = 0; e < 4; ++e) CHECK(fil.value[4 + e] == 1.0);

    // constant field on a torus: every cell sits at the constant value
    auto t4 = from_values(GridTopology::torus(4, 4, 1.0), std::vector<double>(16, 0.0));
    auto filt = build_filtration(t4);
    for (double v : filt.value) CHECK(v == 0.0);

    auto i3 = from_values(GridTopology::interval(3, 1.0), {0, 2, 1});
    auto fi = build_filtration(i3);
    CHECK(fi.value[3] == 2.0);
    CHECK(fi.value[4] == 2.0);

    // filtration value of a cell dominates its faces; cells ordered by value
    for (int c = 0; c < filt.cell_count(); ++c)
        for (int k = 0; k < 4; ++k)
            if (filt.faces[c][k] >= 0) CHECK(filt.value[c] >= filt.value[filt.faces[c][k]]);
}

TEST_CASE("boundary of boundary vanishes over GF(2) and with signs") {
    auto f = from_values(GridTopology::torus(4, 4, 1.0), std::vector<double>(16, 0.0));
    auto fil = build_filtration(f);
    for (int c = 0; c < fil.cell_count(); ++c) {
        if (fil.dim[c] != 2) continue;
        std::map<int, int> acc;
        for (int k = 0; k < 4; ++k) {
            int e = fil.faces[c][k];
            if (e < 0) continue;
            for (int k2 = 0; k2 < 4; ++k2) {
                int v = fil.faces[e][k2];
                if (v >= 0) acc[v] += fil.signs[c][k] * fil.signs[e][k2];
            }
        }
        for (auto& [v, s] : acc) CHECK(s == 0);
    }
}

TEST_CASE("barcode of cosine on the circle") {
    auto topo = GridTopology::circle(256, 2 * pi / 256);
    SampledField f;
    f.topology = topo;
    f.values.resize(256);
    for (int k = 0; k < 256; ++k) f.values[k] = std::cos(2 * pi * k / 256);
    auto bc = barcode(build_filtration(f));
    REQUIRE(bc.bars.size() == 2);
    CHECK(bc.bars[0].degree == 0);
    CHECK(!bc.bars[0].finite());
    CHECK(bc.bars[0].birth == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(bc.bars[1].degree == 1);
    CHECK(!bc.bars[1].finite());
    CHECK(bc.bars[1].birth == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("constant field on the torus gives the Betti numbers of T^2") {
    auto f = from_values(GridTopology::torus(8, 8, 1.0), std::vector<double>(64, 3.25));
    auto bc = barcode(build_filtration(f));
    auto ess = essential_counts(bc);
    CHECK(ess[0] == 1);
    CHECK(ess[1] == 2);
    CHECK(ess[2] == 1);
    CHECK(bc.bars.size() == 4);
    for (const auto& b : bc.bars) CHECK(b.birth == 3.25);
}

TEST_CASE("essential bar counts equal the ambient Betti numbers") {
    auto fi = from_values(GridTopology::interval(9, 1.0), {3, 1, 4, 1, 5, 9, 2, 6, 5});
    auto bci = barcode(build_filtration(fi));
    auto essi = essential_counts(bci);
    CHECK(essi[0] == 1);
    CHECK(essi[1] == 0);

    SampledField fc;
    fc.topology = GridTopology::circle(64, 0.1);
    for (int k = 0; k < 64; ++k) fc.values.push_back(std::sin(0.3 * k) + 0.2 * std::sin(1.1 * k + 0.5));
    auto bcc = barcode(build_filtration(fc));
    auto essc = essential_counts(bcc);
    CHECK(essc[0] == 1);
    CHECK(essc[1] == 1);
}

TEST_CASE("double well bar code matches the relative Betti oracle on every window") {
    SampledField f;
    f.topology = GridTopology::circle(512, 2 * pi / 512);
    for (int k = 0; k < 512; ++k) {
        double th = 2 * pi * k / 512;
        f.values.push_back(std::cos(2 * th) + 0.3 * std::cos(th));
    }
    auto fil = build_filtration(f);
    auto bc = barcode(fil);
    auto cl = critical_levels(f, bc);

    // windows strictly between consecutive critical levels, plus half-infinite ones
    std::vector<double> cuts;
    cuts.push_back(cl.levels.front() - 0.5);
    for (size_t i = 0; i + 1 < cl.levels.size(); ++i)
        cuts.push_back(0.5 * (cl.levels[i] + cl.levels[i + 1]));
    cuts.push_back(cl.levels.back() + 0.5);

    for (size_t i = 0; i < cuts.size(); ++i)
        for (size_t j = i + 1; j < cuts.size(); ++j) {
            LevelWindow w = LevelWindow::of(cuts[i], cuts[j]);
            for (int p = 0; p <= 1; ++p) {
                int counted = bar_counting_betti(bc, w, p);
                int oracle2 = relative_betti(fil, w, p, CoeffGF{2}, cl.levels);
                int oracleq = relative_betti(fil, w, p, CoeffRational{}, cl.levels);
                CHECK(counted == oracle2);
                CHECK(counted == oracleq);
            }
        }
}

TEST_CASE("relative betti window edge cases") {
    SampledField f;
    f.topology = GridTopology::circle(64, 2 * pi / 64);
    for (int k = 0; k < 64; ++k) f.values.push_back(std::cos(2 * pi * k / 64));
    auto fil = build_filtration(f);
    auto bc = barcode(fil);
    auto cl = critical_levels(f, bc);

    // full window: Betti numbers of the circle
    CHECK(relative_betti(fil, LevelWindow::full(), 0) == 1);
    CHECK(relative_betti(fil, LevelWindow::full(), 1) == 1);
    // sublevel of cos below 0 is an arc
    auto w = LevelWindow::of(-2.0, 0.0);
    CHECK(relative_betti(fil, w, 0) == 1);
    CHECK(relative_betti(fil, w, 1) == 0);
    // rejection when an endpoint hits a critical value
    CHECK_THROWS(relative_betti(fil, LevelWindow::of(cl.levels[0], 2.0), 0, CoeffGF{2}, cl.levels));
}

TEST_CASE("barcode is equivariant under monotone reparametrization") {
    SampledField f;
    f.topology = GridTopology::circle(128, 2 * pi / 128);
    for (int k = 0; k < 128; ++k) {
        double th = 2 * pi * k / 128;
        f.values.push_back(std::cos(2 * th) + 0.3 * std::cos(th));
    }
    auto phi = [](double x) { return x * x * x / 3 + x; };  // strictly increasing
    SampledField g = f;
    for (auto& v : g.values) v = phi(v);
    auto bf = barcode(build_filtration(f));
    auto bg = barcode(build_filtration(g));
    REQUIRE(bf.bars.size() == bg.bars.size());
    for (size_t i = 0; i < bf.bars.size(); ++i) {
        CHECK(bg.bars[i].degree == bf.bars[i].degree);
        CHECK(bg.bars[i].birth == doctest::Approx(phi(bf.bars[i].birth)).epsilon(1e-12));
        if (bf.bars[i].finite())
            CHECK(bg.bars[i].death == doctest::Approx(phi(bf.bars[i].death)).epsilon(1e-12));
        else
            CHECK(!bg.bars[i].finite());
    }
}

TEST_CASE("bar multiset is stable under node relabeling (tie-break permutation)") {
    // rotating the circle permutes equal-valued cells but must not change bars
    SampledField f;
    f.topology = GridTopology::circle(96, 2 * pi / 96);
    for (int k = 0; k < 96; ++k) {
        double th = 2 * pi * k / 96;
        f.values.push_back(std::cos(4 * th));  // many exact ties
    }
    SampledField g = f;
    std::rotate(g.values.begin(), g.values.begin() + 17, g.values.end());
    auto bf = barcode(build_filtration(f));
    auto bg = barcode(build_filtration(g));
    REQUIRE(bf.bars.size() == bg.bars.size());
    for (size_t i = 0; i < bf.bars.size(); ++i) {
        CHECK(bf.bars[i].degree == bg.bars[i].degree);
        CHECK(bf.bars[i].birth == bg.bars[i].birth);
        CHECK(((bf.bars[i].finite() == bg.bars[i].finite()) &&
               (!bf.bars[i].finite() || bf.bars[i].death == bg.bars[i].death)));
    }
}

TEST_CASE("zero-length pairs are dropped (plateau input)") {
    auto f = from_values(GridTopology::circle(6, 1.0), {1, 1, 1, 1, 1, 1});
    auto bc = barcode(build_filtration(f));
    CHECK(bc.bars.size() == 2);  // only the essential pair of S^1
}

TEST_CASE("GF(p) barcode agrees with GF(2) on torsion-free landscapes") {
    SampledField f;
    f.topology = GridTopology::circle(128, 2 * pi / 128);
    for (int k = 0; k < 128; ++k) {
        double th = 2 * pi * k / 128;
        f.values.push_back(std::sin(th) + 0.4 * std::cos(3 * th));
    }
    auto b2 = barcode(build_filtration(f), 2);
    auto b5 = barcode(build_filtration(f), 5);
    REQUIRE(b2.bars.size() == b5.bars.size());
    for (size_t i = 0; i < b2.bars.size(); ++i) {
        CHECK(b2.bars[i].degree == b5.bars[i].degree);
        CHECK(b2.bars[i].birth == b5.bars[i].birth);
    }
    CHECK_THROWS(barcode(build_filtration(f), 6));
}

TEST_CASE("barcode JSON round trip keeps ordering") {
    SampledField f;
    f.topology = GridTopology::circle(64, 2 * pi / 64);
    for (int k = 0; k < 64; ++k) {
        double th = 2 * pi * k / 64;
        f.values.push_back(std::cos(2 * th) - 0.2 * std::sin(th));
    }
    auto bc = barcode(build_filtration(f));
    auto bc2 = barcode_from_json(barcode_to_json(bc));
    REQUIRE(bc2.bars.size() == bc.bars.size());
    for (size_t i = 0; i < bc.bars.size(); ++i) {
        CHECK(bc2.bars[i].degree == bc.bars[i].degree);
        CHECK(bc2.bars[i].birth == bc.bars[i].birth);
    }
    CHECK(bc2.coefficient_field == "gf2");
}
