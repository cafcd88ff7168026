#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wittenlab/field_io.hpp"
#include "wittenlab/grid.hpp"
#include "wittenlab/persistence.hpp"

using namespace wittenlab;

namespace {
const double pi = 3.14159265358979323846;

FieldExpr cos_theta() {
    return {"cos", [](double x, double) { return std::cos(x); }};
}
}  // namespace

TEST_CASE("sample evaluates on the documented node ordering") {
    auto topo = GridTopology::circle(8, 2 * pi / 8);
    auto f = sample(cos_theta(), topo);
    for (int k = 0; k < 8; ++k) CHECK(f.values[k] == doctest::Approx(std::cos(2 * pi * k / 8)).epsilon(1e-15));

    auto zero = sample({"zero", [](double, double) { return 0.0; }}, GridTopology::torus(4, 4, 0.5));
    for (double v : zero.values) CHECK(v == 0.0);

    // quartic double well on [-2,2]: node 50 sits at x = 0
    auto quart = sample({"quartic", [](double x, double) { return x * x * x * x / 4 - x * x / 2 + 0.25; }},
                        GridTopology::interval(101, 0.04, -2.0));
    CHECK(quart.values[50] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("sample is pure and rejects non-finite values") {
    auto topo = GridTopology::circle(32, 0.1);
    auto f1 = sample(cos_theta(), topo);
    auto f2 = sample(cos_theta(), topo);
    CHECK(f1.values == f2.values);
    CHECK(f1.hash() == f2.hash());

    FieldExpr bad{"bad", [](double x, double) { return x == 0.0 ? 1.0 / 0.0 : 0.0; }};
    CHECK_THROWS_WITH_AS(sample(bad, topo), doctest::Contains("node 0"), std::domain_error);
}

TEST_CASE("grid invariants") {
    CHECK_THROWS(GridTopology::circle(2, 0.1));
    CHECK_THROWS(GridTopology::circle(8, 0.0));
    auto c = GridTopology::circle(8, 0.25);
    CHECK(c.extent_x() == doctest::Approx(8 * 0.25));
    auto i = GridTopology::interval(5, 1.0);
    CHECK(i.edge_count() == 4);
    auto t = GridTopology::torus(4, 6, 0.5);
    CHECK(t.node_count() == 24);
    CHECK(t.edge_count() == 48);
    CHECK(t.face_count() == 24);
}

TEST_CASE("critical levels from bar endpoints") {
    auto f = sample(cos_theta(), GridTopology::circle(256, 2 * pi / 256));
    auto bc = barcode(build_filtration(f));
    auto cl = critical_levels(f, bc);
    REQUIRE(cl.levels.size() == 2);
    CHECK(cl.levels[0] == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(cl.levels[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(*cl.eta_f == doctest::Approx(0.25 * (cl.levels[1] - cl.levels[0])));
    CHECK(*cl.eta_f < 0.5 * cl.min_gap);

    // single-level landscape: accepted with the eta flag empty
    auto flat = sample({"flat", [](double, double) { return 2.5; }}, GridTopology::torus(4, 4, 1.0));
    auto bflat = barcode(build_filtration(flat));
    auto clf = critical_levels(flat, bflat);
    CHECK(clf.single_level);
    CHECK(!clf.eta_f.has_value());
}

TEST_CASE("critical levels shift with the field and match a brute-force extremum scan") {
    auto topo = GridTopology::circle(512, 2 * pi / 512);
    FieldExpr dw{"dw", [](double x, double) { return std::cos(2 * x) + 0.3 * std::cos(x); }};
    auto f = sample(dw, topo);
    auto cl = critical_levels(f, barcode(build_filtration(f)));

    auto scan = oracles::local_extremum_values(f);
    REQUIRE(cl.levels.size() == scan.size());
    for (size_t i = 0; i < scan.size(); ++i) CHECK(cl.levels[i] == doctest::Approx(scan[i]).epsilon(1e-14));

    FieldExpr dws{"dws", [](double x, double) { return std::cos(2 * x) + 0.3 * std::cos(x) + 5.0; }};
    auto g = sample(dws, topo);
    auto clg = critical_levels(g, barcode(build_filtration(g)));
    REQUIRE(clg.levels.size() == cl.levels.size());
    for (size_t i = 0; i < cl.levels.size(); ++i)
        CHECK(clg.levels[i] == doctest::Approx(cl.levels[i] + 5.0).epsilon(1e-14));
    CHECK(*clg.eta_f == doctest::Approx(*cl.eta_f));
}

TEST_CASE("field CSV and JSON round trips") {
    auto f = sample(cos_theta(), GridTopology::circle(16, 2 * pi / 16));
    auto csv = field_to_csv(f);
    auto f2 = field_from_csv(csv);
    CHECK(f2.topology == f.topology);
    CHECK(f2.values == f.values);
    CHECK(field_to_csv(f2) == csv);  // byte-exact write(parse(write))

    auto js = field_to_json(f);
    auto f3 = field_from_json(js);
    CHECK(f3.values == f.values);
    CHECK(field_to_json(f3) == js);

    auto t = sample({"xy", [](double x, double y) { return x + 2 * y; }},
                    GridTopology::torus(4, 5, 0.25));
    auto t2 = field_from_csv(field_to_csv(t));
    CHECK(t2.topology == t.topology);
    CHECK(t2.values == t.values);

    CHECK_THROWS(field_from_csv("bogus,header\n1.0\n"));
}

TEST_CASE("lipschitz bound covers adjacent differences") {
    auto f = sample(cos_theta(), GridTopology::circle(64, 2 * pi / 64));
    double lb = f.lipschitz();
    for (int i = 0; i < 64; ++i) {
        double d = std::fabs(f.values[(i + 1) % 64] - f.values[i]) / f.topology.spacing;
        CHECK(lb >= d - 1e-15);
    }
}
