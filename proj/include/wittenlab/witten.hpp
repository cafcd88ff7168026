#pragma once

#include <optional>
#include <vector>

#include "wittenlab/persistence.hpp"
#include "wittenlab/sparse.hpp"

namespace wittenlab {

// Activity masks for the band a <= f <= b with the two boundary node sets.
// Nodes strictly inside (a < f < b) carry unknowns; nodes at or below a are
// Dirichlet (value pinned to zero), nodes at or above b are eliminated by the
// ghost-node Robin condition (the deformed normal derivative vanishes).
struct WindowDomain {
    LevelWindow window;
    std::vector<int> node_index;     // grid node -> column index, -1 outside
    std::vector<int> active_nodes;   // column -> grid node
    std::vector<int> dirichlet_nodes;  // grid nodes on the f<=a side adjacent to the band
    std::vector<int> robin_nodes;      // grid nodes on the f>=b side adjacent to the band
};

WindowDomain make_window_domain(const SampledField& field, const LevelWindow& window,
                                const CriticalLevels& levels);

// Discrete deformed differential h*d + df^ on a uniform grid, stored sparse;
// with the uniform cochain weights the adjoint is the plain transpose.
struct WittenOperator {
    double h = 0;
    int degree = 0;
    SparseMatrix d;  // p-cochains -> (p+1)-cochains
    double weight = 1.0;
    bool resolution_warning = false;  // spacing > h/4
    double dx_over_h = 0;
    std::optional<WindowDomain> domain;  // engaged for window operators
    int skipped_steep_edges = 0;  // edges jumping across the whole band
};

// Midpoint scheme on every edge (u_i, u_j):
//   (d u)_e = h (u_j - u_i)/dx + (f_j - f_i)/dx * (u_i + u_j)/2.
WittenOperator assemble_d0(const SampledField& field, double h);
WittenOperator assemble_d0(const SampledField& field, double h, const WindowDomain& domain);

// Torus 1-form differential: h * (discrete curl) plus the face-averaged
// df ^ omega term.
WittenOperator assemble_d1_torus(const SampledField& field, double h);

// Delta^(p) = d_p^T d_p + d_{p-1} d_{p-1}^T (either block may be absent).
SparseMatrix laplacian(const WittenOperator* d_prev, const WittenOperator* d_cur);

// Ghost-node elimination ratio u_ghost/u_interior for a Robin boundary edge;
// equals 1 (pure Neumann mirror) when f is locally constant across the edge.
double robin_ghost_ratio(double f_interior, double f_ghost, double h);

}  // namespace wittenlab
