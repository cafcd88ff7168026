#pragma once

#include <span>
#include <variant>

#include "wittenlab/persistence.hpp"

namespace wittenlab {

// Coefficient choice for the rank-based relative Betti oracle.
struct CoeffGF {
    int64_t p = 2;
};
struct CoeffRational {};
using Coefficients = std::variant<CoeffGF, CoeffRational>;

// beta^p(f^b, f^a) of the pair of strict sublevel complexes, computed
// independently of the bar code from ranks of the relative boundary maps in
// exact arithmetic.  Throws if a window endpoint hits one of the supplied
// critical values.
int relative_betti(const CubicalFiltration& filtration, const LevelWindow& window, int degree,
                   const Coefficients& coeff = CoeffGF{2},
                   std::span<const double> critical_values = {});

}  // namespace wittenlab
