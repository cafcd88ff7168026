#include "wittenlab/relative_betti.hpp"

#include <algorithm>
#include <stdexcept>

#include "wittenlab/rank.hpp"

namespace wittenlab {

namespace {

// Boundary matrix of the q-cells in the strip {a <= value < b}, with faces
// kept only when they lie in the strip themselves.
IntMatrix strip_boundary(const CubicalFiltration& f, double a, double b, int q,
                         const std::vector<int>& strip_index, int n_qm1) {
    IntMatrix m;
    m.cols = n_qm1;
    for (int cell = 0; cell < f.cell_count(); ++cell) {
        if (f.dim[cell] != q) continue;
        if (!(f.value[cell] >= a && f.value[cell] < b)) continue;
        IntRow row;
        for (int k = 0; k < 4; ++k) {
            int fc = f.faces[cell][k];
            if (fc < 0) continue;
            if (!(f.value[fc] >= a && f.value[fc] < b)) continue;
            row.cols.push_back(strip_index[fc]);
            row.coeffs.push_back(f.signs[cell][k]);
        }
        m.data.push_back(std::move(row));
        ++m.rows;
    }
    return m;
}

int rank_of(const IntMatrix& m, const Coefficients& coeff) {
    if (std::holds_alternative<CoeffRational>(coeff)) return rank_rational(m);
    return rank_gfp(m, std::get<CoeffGF>(coeff).p);
}

}  // namespace

int relative_betti(const CubicalFiltration& f, const LevelWindow& w, int degree,
                   const Coefficients& coeff, std::span<const double> critical_values) {
    for (double c : critical_values)
        if (c == w.a || c == w.b)
            throw std::invalid_argument("relative_betti: window endpoint equals a critical value");
    if (degree < 0 || degree > f.topology.dim()) return 0;

    double a = w.a, b = w.b;
    // index the strip cells per dimension
    std::vector<int> strip_index(f.cell_count(), -1);
    std::array<int, 3> count = {0, 0, 0};
    for (int cell = 0; cell < f.cell_count(); ++cell) {
        if (f.value[cell] >= a && f.value[cell] < b) strip_index[cell] = count[f.dim[cell]]++;
    }

    IntMatrix bd_p = strip_boundary(f, a, b, degree, strip_index,
                                    degree > 0 ? count[degree - 1] : 0);
    int rank_p = degree > 0 ? rank_of(bd_p, coeff) : 0;
    int rank_p1 = 0;
    if (degree + 1 <= f.topology.dim()) {
        IntMatrix bd_p1 = strip_boundary(f, a, b, degree + 1, strip_index, count[degree]);
        rank_p1 = rank_of(bd_p1, coeff);
    }
    return count[degree] - rank_p - rank_p1;
}

}  // namespace wittenlab
