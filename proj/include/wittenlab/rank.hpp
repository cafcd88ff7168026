#pragma once

#include <cstdint>
#include <vector>

namespace wittenlab {

// Sparse integer matrix rows for exact rank computations: per row a list of
// (column, coefficient) with small integer coefficients.
struct IntRow {
    std::vector<int> cols;
    std::vector<int64_t> coeffs;
};

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<IntRow> data;
};

// Rank over GF(2) by bitset Gaussian elimination.
int rank_gf2(const IntMatrix& m);

// Rank over GF(p), p an odd prime < 2^31 (entries reduced mod p).
int rank_gfp(const IntMatrix& m, int64_t p);

// Exact rank over the rationals: singleton pre-elimination followed by
// fraction-free Bareiss on the remaining core.  Intermediate entries are
// exact minors of the input; throws on (unexpected) 128-bit overflow rather
// than returning a wrong rank.
int rank_rational(const IntMatrix& m);

bool is_prime(int64_t p);

}  // namespace wittenlab
