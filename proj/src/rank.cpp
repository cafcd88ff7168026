#include "wittenlab/rank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wittenlab {

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int rank_gf2(const IntMatrix& m) {
    int words = (m.cols + 63) / 64;
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(m.rows);
    for (const auto& r : m.data) {
        std::vector<uint64_t> bits(words, 0);
        bool nonzero = false;
        for (size_t k = 0; k < r.cols.size(); ++k) {
            if (r.coeffs[k] & 1) {
                bits[r.cols[k] >> 6] ^= (uint64_t{1} << (r.cols[k] & 63));
                nonzero = true;
            }
        }
        if (nonzero) rows.push_back(std::move(bits));
    }
    int rank = 0;
    std::vector<std::vector<uint64_t>> basis;  // basis[i] has pivot pivots[i]
    std::vector<int> pivots;
    for (auto& row : rows) {
        for (size_t b = 0; b < basis.size(); ++b) {
            int p = pivots[b];
            if (row[p >> 6] & (uint64_t{1} << (p & 63)))
                for (int w = 0; w < words; ++w) row[w] ^= basis[b][w];
        }
        int pivot = -1;
        for (int w = 0; w < words && pivot < 0; ++w)
            if (row[w]) pivot = w * 64 + __builtin_ctzll(row[w]);
        if (pivot >= 0) {
            basis.push_back(std::move(row));
            pivots.push_back(pivot);
            ++rank;
        }
    }
    return rank;
}

int rank_gfp(const IntMatrix& m, int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("rank_gfp: modulus is not prime");
    if (p == 2) return rank_gf2(m);
    auto modp = [p](int64_t x) {
        int64_t r = x % p;
        return r < 0 ? r + p : r;
    };
    // dense elimination mod p
    std::vector<std::vector<int64_t>> a;
    for (const auto& r : m.data) {
        std::vector<int64_t> row(m.cols, 0);
        bool nz = false;
        for (size_t k = 0; k < r.cols.size(); ++k) {
            row[r.cols[k]] = modp(r.coeffs[k]);
            nz = nz || row[r.cols[k]] != 0;
        }
        if (nz) a.push_back(std::move(row));
    }
    auto inv = [&](int64_t x) {  // Fermat
        int64_t e = p - 2, b = x % p, r = 1;
        while (e) {
            if (e & 1) r = (__int128)r * b % p;
            b = (__int128)b * b % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    int rowi = 0;
    for (int col = 0; col < m.cols && rowi < (int)a.size(); ++col) {
        int piv = -1;
        for (int r = rowi; r < (int)a.size(); ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rowi], a[piv]);
        int64_t ipiv = inv(a[rowi][col]);
        for (int r = rowi + 1; r < (int)a.size(); ++r) {
            if (a[r][col] == 0) continue;
            int64_t f = (__int128)a[r][col] * ipiv % p;
            for (int c = col; c < m.cols; ++c)
                a[r][c] = modp(a[r][c] - (int64_t)((__int128)f * a[rowi][c] % p));
        }
        ++rowi;
        ++rank;
    }
    return rank;
}

namespace {

struct I128 {
    __int128 v;
};

inline __int128 checked_mul(__int128 a, __int128 b) {
    if (a == 0 || b == 0) return 0;
    __int128 r = a * b;
    if (r / b != a) throw std::overflow_error("rank_rational: 128-bit overflow");
    return r;
}

}  // namespace

int rank_rational(const IntMatrix& m) {
    // Work on a sparse copy; eliminate rows/columns with a single nonzero
    // first (each contributes exactly 1 to the rank), which collapses most of
    // a grid boundary matrix before the dense fraction-free stage.
    std::vector<std::vector<std::pair<int, int64_t>>> rows(m.rows);
    std::vector<int> rowcnt(m.rows, 0), colcnt(m.cols, 0);
    for (int r = 0; r < m.rows; ++r) {
        for (size_t k = 0; k < m.data[r].cols.size(); ++k) {
            if (m.data[r].coeffs[k] == 0) continue;
            rows[r].push_back({m.data[r].cols[k], m.data[r].coeffs[k]});
        }
        std::sort(rows[r].begin(), rows[r].end());
        rowcnt[r] = (int)rows[r].size();
        for (auto& [c, v] : rows[r]) ++colcnt[c];
    }
    std::vector<char> rowdead(m.rows, 0), coldead(m.cols, 0);
    // column -> rows holding it
    std::vector<std::vector<int>> colrows(m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (auto& [c, v] : rows[r]) colrows[c].push_back(r);

    int rank = 0;
    bool changed = true;
    auto kill_rowcol = [&](int r, int c) {
        // pivot on (r,c): remove row r and column c entirely; this is only
        // valid when row r or column c is a singleton, where no fill-in from
        // the pivot affects the rank of the remainder.
        rowdead[r] = 1;
        ++rank;
        coldead[c] = 1;
        for (int rr : colrows[c]) {
            if (rowdead[rr]) continue;
            auto& row = rows[rr];
            for (size_t k = 0; k < row.size(); ++k)
                if (row[k].first == c) {
                    row.erase(row.begin() + k);
                    --rowcnt[rr];
                    break;
                }
        }
        for (auto& [cc, vv] : rows[r]) {
            if (cc == c || coldead[cc]) continue;
            --colcnt[cc];
        }
        rows[r].clear();
    };
    while (changed) {
        changed = false;
        for (int r = 0; r < m.rows; ++r) {
            if (rowdead[r] || rowcnt[r] != 1) continue;
            int c = -1;
            for (auto& [cc, vv] : rows[r])
                if (!coldead[cc]) c = cc;
            if (c < 0) {
                rowdead[r] = 1;
                continue;
            }
            // recompute live column count lazily
            int live = 0;
            for (int rr : colrows[c])
                if (!rowdead[rr]) ++live;
            colcnt[c] = live;
            kill_rowcol(r, c);
            changed = true;
        }
        for (int c = 0; c < m.cols; ++c) {
            if (coldead[c]) continue;
            int live = 0, lastr = -1;
            for (int rr : colrows[c])
                if (!rowdead[rr]) {
                    ++live;
                    lastr = rr;
                }
            colcnt[c] = live;
            if (live == 1) {
                kill_rowcol(lastr, c);
                changed = true;
            }
        }
    }

    // Dense Bareiss on the surviving core.
    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < m.rows; ++r)
        if (!rowdead[r] && !rows[r].empty()) live_rows.push_back(r);
    std::vector<int> colmap(m.cols, -1);
    for (int r : live_rows)
        for (auto& [c, v] : rows[r])
            if (!coldead[c] && colmap[c] < 0) {
                colmap[c] = (int)live_cols.size();
                live_cols.push_back(c);
            }
    int nr = (int)live_rows.size(), nc = (int)live_cols.size();
    if (nr == 0 || nc == 0) return rank;
    std::vector<std::vector<__int128>> a(nr, std::vector<__int128>(nc, 0));
    for (int i = 0; i < nr; ++i)
        for (auto& [c, v] : rows[live_rows[i]])
            if (!coldead[c]) a[i][colmap[c]] = v;

    __int128 prev = 1;
    int rowi = 0;
    for (int col = 0; col < nc && rowi < nr; ++col) {
        int piv = -1;
        for (int r = rowi; r < nr; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rowi], a[piv]);
        __int128 pivval = a[rowi][col];
        for (int r = rowi + 1; r < nr; ++r) {
            if (a[r][col] == 0 && pivval == 1) {
                // still need the scaling step of Bareiss
            }
            for (int c = col + 1; c < nc; ++c) {
                __int128 t = checked_mul(pivval, a[r][c]) - checked_mul(a[r][col], a[rowi][c]);
                a[r][c] = t / prev;  // exact division (Bareiss)
            }
            a[r][col] = 0;
        }
        prev = pivval;
        ++rowi;
        ++rank;
    }
    return rank;
}

}  // namespace wittenlab
