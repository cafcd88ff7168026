#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wittenlab/grid.hpp"

namespace wittenlab {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower-star cubical filtration of a sampled field: every cell carries the
// max of its vertex values, cells are ordered by (value, dimension, index).
struct CubicalFiltration {
    GridTopology topology;
    std::vector<double> value;                  // per cell
    std::vector<int8_t> dim;                    // per cell
    std::vector<std::array<int, 4>> faces;      // boundary cell ids, -1 padded
    std::vector<std::array<int8_t, 4>> signs;   // orientation signs
    std::vector<int> order;                     // cell ids by (value, dim, id)
    std::vector<int> position;                  // inverse of order
    int n_vertices = 0, n_edges = 0, n_faces = 0;
    std::string source_hash;

    int cell_count() const { return static_cast<int>(value.size()); }
};

CubicalFiltration build_filtration(const SampledField& field);

struct Bar {
    int degree = 0;
    double birth = 0;
    double death = kInf;  // kInf for essential bars
    int birth_cell = -1, death_cell = -1;

    bool finite() const { return std::isfinite(death); }
    double length() const { return death - birth; }
};

struct BarCode {
    std::vector<Bar> bars;  // sorted by (degree, birth, death)
    std::string coefficient_field;  // "gf<p>"
    std::string source_hash;

    std::vector<const Bar*> of_degree(int p) const;
    int max_degree() const;
};

// Persistence bar code of the filtration over GF(p).  Zero-length pairs are
// dropped; unpaired creators become essential bars; the degree of a bar is
// the dimension of its birth cell.
BarCode barcode(const CubicalFiltration& filtration, int64_t field_p = 2);

// Number of degree-p bar endpoints lying alone inside (a,b): lower endpoints
// of degree-p bars whose death is outside, plus finite upper endpoints of
// degree-(p-1) bars whose birth is at or below a.  Equals beta^p(f^b, f^a).
int bar_counting_betti(const BarCode& bc, const LevelWindow& window, int degree);

struct CriticalLevels {
    std::vector<double> levels;       // sorted, deduplicated bar endpoints
    std::optional<double> eta_f;      // quarter of the minimal gap; empty if single level
    double min_gap = 0;
    bool single_level = false;

    double span() const { return levels.back() - levels.front(); }
    bool is_critical(double v) const;
};

CriticalLevels critical_levels(const SampledField& field, const BarCode& bc);

std::string barcode_to_json(const BarCode& bc);
BarCode barcode_from_json(const std::string& text);

}  // namespace wittenlab
