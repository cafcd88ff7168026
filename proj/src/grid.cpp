#include "wittenlab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wittenlab {

static void check_axis(int n, double spacing) {
    if (n < 3) throw std::invalid_argument("grid: need at least 3 nodes per axis");
    if (!(spacing > 0)) throw std::invalid_argument("grid: spacing must be positive");
}

GridTopology GridTopology::circle(int n, double spacing, double origin) {
    check_axis(n, spacing);
    GridTopology t;
    t.kind = Kind::Circle;
    t.nx = n;
    t.spacing = spacing;
    t.origin = {origin, 0.0};
    return t;
}

GridTopology GridTopology::interval(int n, double spacing, double origin) {
    check_axis(n, spacing);
    GridTopology t;
    t.kind = Kind::Interval;
    t.nx = n;
    t.spacing = spacing;
    t.origin = {origin, 0.0};
    return t;
}

GridTopology GridTopology::torus(int nx, int ny, double spacing, std::array<double, 2> origin) {
    check_axis(nx, spacing);
    check_axis(ny, spacing);
    GridTopology t;
    t.kind = Kind::Torus;
    t.nx = nx;
    t.ny = ny;
    t.spacing = spacing;
    t.origin = origin;
    return t;
}

int GridTopology::edge_count() const {
    switch (kind) {
        case Kind::Circle: return nx;
        case Kind::Interval: return nx - 1;
        case Kind::Torus: return 2 * nx * ny;
    }
    return 0;
}

std::array<double, 2> GridTopology::node_coord(int node) const {
    if (kind == Kind::Torus) {
        int i = node % nx, j = node / nx;
        return {origin[0] + i * spacing, origin[1] + j * spacing};
    }
    return {origin[0] + node * spacing, 0.0};
}

std::string GridTopology::kind_name() const {
    switch (kind) {
        case Kind::Circle: return "circle";
        case Kind::Interval: return "interval";
        case Kind::Torus: return "torus";
    }
    return "?";
}

double SampledField::lipschitz() const {
    if (lipschitz_bound) return *lipschitz_bound;
    double m = 0;
    const auto& t = topology;
    auto upd = [&](int a, int b) {
        m = std::max(m, std::fabs(values[a] - values[b]) / t.spacing);
    };
    if (t.kind == GridTopology::Kind::Torus) {
        for (int j = 0; j < t.ny; ++j)
            for (int i = 0; i < t.nx; ++i) {
                int v = j * t.nx + i;
                upd(v, j * t.nx + (i + 1) % t.nx);
                upd(v, ((j + 1) % t.ny) * t.nx + i);
            }
    } else {
        int e = t.edge_count();
        for (int i = 0; i < e; ++i) upd(i, (i + 1) % t.nx);
    }
    lipschitz_bound = m;
    return m;
}

std::string SampledField::hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* p, size_t n) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    int kind = static_cast<int>(topology.kind);
    mix(&kind, sizeof kind);
    mix(&topology.nx, sizeof topology.nx);
    mix(&topology.ny, sizeof topology.ny);
    mix(&topology.spacing, sizeof topology.spacing);
    mix(values.data(), values.size() * sizeof(double));
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SampledField sample(const FieldExpr& expr, const GridTopology& topology) {
    SampledField f;
    f.topology = topology;
    int n = topology.node_count();
    f.values.resize(n);
    for (int k = 0; k < n; ++k) {
        auto [x, y] = topology.node_coord(k);
        double v = expr.eval(x, y);
        if (!std::isfinite(v))
            throw std::domain_error("sample: expression '" + expr.name +
                                    "' is not finite at node " + std::to_string(k));
        f.values[k] = v;
    }
    return f;
}

LevelWindow LevelWindow::of(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("level window needs a < b");
    LevelWindow w;
    w.a = a;
    w.b = b;
    return w;
}

}  // namespace wittenlab
