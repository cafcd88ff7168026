#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace wittenlab {

// Uniform 1D (circle/interval) and 2D (torus) grids.  Node ordering is
// row-major with axis 0 fastest: node(i,j) = j*nx + i.
struct GridTopology {
    enum class Kind { Circle, Interval, Torus };

    Kind kind = Kind::Circle;
    int nx = 0;
    int ny = 1;          // only for torus
    double spacing = 0;  // per axis (same on both torus axes)
    std::array<double, 2> origin = {0.0, 0.0};  // node-coordinate offset, not serialized

    static GridTopology circle(int n, double spacing, double origin = 0.0);
    static GridTopology interval(int n, double spacing, double origin = 0.0);
    static GridTopology torus(int nx, int ny, double spacing,
                              std::array<double, 2> origin = {0.0, 0.0});

    int dim() const { return kind == Kind::Torus ? 2 : 1; }
    int node_count() const { return kind == Kind::Torus ? nx * ny : nx; }
    int edge_count() const;
    int face_count() const { return kind == Kind::Torus ? nx * ny : 0; }
    bool periodic_x() const { return kind != Kind::Interval; }

    std::array<double, 2> node_coord(int node) const;
    double extent_x() const { return (kind == Kind::Interval ? nx - 1 : nx) * spacing; }

    bool operator==(const GridTopology& o) const {
        return kind == o.kind && nx == o.nx && ny == o.ny && spacing == o.spacing;
    }
    std::string kind_name() const;
};

struct SampledField {
    GridTopology topology;
    std::vector<double> values;
    mutable std::optional<double> lipschitz_bound;

    double lipschitz() const;  // sup over adjacent node pairs of |df|/spacing
    std::string hash() const;  // FNV-1a over topology and value bytes
};

// Closed-form scalar function descriptor; 1D grids pass (x, 0).
struct FieldExpr {
    std::string name;
    std::function<double(double, double)> eval;
};

SampledField sample(const FieldExpr& expr, const GridTopology& topology);

struct LevelWindow {
    double a = -std::numeric_limits<double>::infinity();
    double b = std::numeric_limits<double>::infinity();

    static LevelWindow full() { return {}; }
    static LevelWindow of(double a, double b);
    bool contains(double x) const { return a < x && x < b; }
    bool finite_a() const { return std::isfinite(a); }
    bool finite_b() const { return std::isfinite(b); }
};

}  // namespace wittenlab
