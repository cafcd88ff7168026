#include "wittenlab/witten.hpp"

#include <cmath>
#include <stdexcept>

namespace wittenlab {

namespace {

struct EdgeList {
    // (node a, node b) per grid edge, in the grid's edge ordering
    std::vector<std::pair<int, int>> edges;
};

EdgeList grid_edges(const GridTopology& t) {
    EdgeList el;
    if (t.kind == GridTopology::Kind::Torus) {
        int nx = t.nx, ny = t.ny;
        auto vid = [&](int i, int j) { return ((j % ny + ny) % ny) * nx + ((i % nx + nx) % nx); };
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) el.edges.push_back({vid(i, j), vid(i + 1, j)});
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) el.edges.push_back({vid(i, j), vid(i, j + 1)});
    } else {
        int e = t.edge_count();
        for (int i = 0; i < e; ++i) el.edges.push_back({i, (i + 1) % t.nx});
    }
    return el;
}

void fill_common(WittenOperator& op, const SampledField& field, double h) {
    op.h = h;
    op.dx_over_h = field.topology.spacing / h;
    op.resolution_warning = field.topology.spacing > 0.25 * h;
    op.weight = std::pow(field.topology.spacing, field.topology.dim());
}

}  // namespace

double robin_ghost_ratio(double f_interior, double f_ghost, double h) {
    double delta = (f_ghost - f_interior) / (2.0 * h);
    return (1.0 - delta) / (1.0 + delta);
}

WindowDomain make_window_domain(const SampledField& field, const LevelWindow& window,
                                const CriticalLevels& levels) {
    if ((window.finite_a() && levels.is_critical(window.a)) ||
        (window.finite_b() && levels.is_critical(window.b)))
        throw std::invalid_argument("window domain: window endpoint is a critical value");
    const auto& t = field.topology;
    WindowDomain dom;
    dom.window = window;
    dom.node_index.assign(t.node_count(), -1);
    for (int v = 0; v < t.node_count(); ++v) {
        if (window.contains(field.values[v])) {
            dom.node_index[v] = static_cast<int>(dom.active_nodes.size());
            dom.active_nodes.push_back(v);
        }
    }
    if (dom.active_nodes.empty())
        throw std::invalid_argument("window domain: no grid nodes inside the band");
    auto el = grid_edges(t);
    std::vector<char> seen_d(t.node_count(), 0), seen_r(t.node_count(), 0);
    for (auto [u, v] : el.edges) {
        bool au = dom.node_index[u] >= 0, av = dom.node_index[v] >= 0;
        if (au == av) continue;
        int outside = au ? v : u;
        if (field.values[outside] <= window.a && !seen_d[outside]) {
            seen_d[outside] = 1;
            dom.dirichlet_nodes.push_back(outside);
        } else if (field.values[outside] >= window.b && !seen_r[outside]) {
            seen_r[outside] = 1;
            dom.robin_nodes.push_back(outside);
        }
    }
    return dom;
}

WittenOperator assemble_d0(const SampledField& field, double h) {
    if (!(h > 0)) throw std::invalid_argument("assemble_d0: h must be positive");
    const auto& t = field.topology;
    double dx = t.spacing;
    WittenOperator op;
    op.degree = 0;
    fill_common(op, field, h);
    auto el = grid_edges(t);
    std::vector<Triplet> trip;
    trip.reserve(2 * el.edges.size());
    for (size_t e = 0; e < el.edges.size(); ++e) {
        auto [u, v] = el.edges[e];
        double df = field.values[v] - field.values[u];
        trip.push_back({(int)e, u, (-h + 0.5 * df) / dx});
        trip.push_back({(int)e, v, (h + 0.5 * df) / dx});
    }
    op.d = SparseMatrix((int)el.edges.size(), t.node_count(), std::move(trip));
    return op;
}

WittenOperator assemble_d0(const SampledField& field, double h, const WindowDomain& dom) {
    if (!(h > 0)) throw std::invalid_argument("assemble_d0: h must be positive");
    const auto& t = field.topology;
    double dx = t.spacing;
    WittenOperator op;
    op.degree = 0;
    fill_common(op, field, h);
    op.domain = dom;
    auto el = grid_edges(t);
    std::vector<Triplet> trip;
    int row = 0;
    for (auto [u, v] : el.edges) {
        int cu = dom.node_index[u], cv = dom.node_index[v];
        double df = field.values[v] - field.values[u];
        if (cu >= 0 && cv >= 0) {
            trip.push_back({row, cu, (-h + 0.5 * df) / dx});
            trip.push_back({row, cv, (h + 0.5 * df) / dx});
            ++row;
        } else if (cu >= 0 || cv >= 0) {
            int in = cu >= 0 ? u : v;
            int out = cu >= 0 ? v : u;
            if (field.values[out] <= dom.window.a) {
                // Dirichlet: the outside value is pinned to zero, keep the row
                double cin = (in == u) ? (-h + 0.5 * df) / dx : (h + 0.5 * df) / dx;
                trip.push_back({row, dom.node_index[in], cin});
                ++row;
            }
            // upper side: ghost elimination makes the row identically zero
        } else if ((field.values[u] <= dom.window.a && field.values[v] >= dom.window.b) ||
                   (field.values[v] <= dom.window.a && field.values[u] >= dom.window.b)) {
            ++op.skipped_steep_edges;
        }
    }
    op.d = SparseMatrix(row, (int)dom.active_nodes.size(), std::move(trip));
    return op;
}

WittenOperator assemble_d1_torus(const SampledField& field, double h) {
    if (!(h > 0)) throw std::invalid_argument("assemble_d1_torus: h must be positive");
    const auto& t = field.topology;
    if (t.kind != GridTopology::Kind::Torus)
        throw std::invalid_argument("assemble_d1_torus: torus topology required");
    int nx = t.nx, ny = t.ny;
    double dx = t.spacing;
    WittenOperator op;
    op.degree = 1;
    fill_common(op, field, h);
    auto vid = [&](int i, int j) { return ((j % ny + ny) % ny) * nx + ((i % nx + nx) % nx); };
    auto ex = [&](int i, int j) { return vid(i, j); };
    auto ey = [&](int i, int j) { return nx * ny + vid(i, j); };
    const auto& f = field.values;
    std::vector<Triplet> trip;
    trip.reserve(4 * nx * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int face = vid(i, j);
            double fx = (f[vid(i + 1, j)] - f[vid(i, j)] + f[vid(i + 1, j + 1)] - f[vid(i, j + 1)]) /
                        (2 * dx);
            double fy = (f[vid(i, j + 1)] - f[vid(i, j)] + f[vid(i + 1, j + 1)] - f[vid(i + 1, j)]) /
                        (2 * dx);
            trip.push_back({face, ex(i, j), h / dx - 0.5 * fy});
            trip.push_back({face, ex(i, j + 1), -h / dx - 0.5 * fy});
            trip.push_back({face, ey(i, j), -h / dx + 0.5 * fx});
            trip.push_back({face, ey(i + 1, j), h / dx + 0.5 * fx});
        }
    op.d = SparseMatrix(nx * ny, 2 * nx * ny, std::move(trip));
    return op;
}

SparseMatrix laplacian(const WittenOperator* d_prev, const WittenOperator* d_cur) {
    if (!d_prev && !d_cur) throw std::invalid_argument("laplacian: no blocks supplied");
    std::optional<SparseMatrix> acc;
    if (d_cur) acc = sparse_matmul(d_cur->d.transposed(), d_cur->d);
    if (d_prev) {
        auto up = sparse_matmul(d_prev->d, d_prev->d.transposed());
        acc = acc ? sparse_add(*acc, up) : up;
    }
    return *acc;
}

}  // namespace wittenlab
