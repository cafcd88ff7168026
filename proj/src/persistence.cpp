#include "wittenlab/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "wittenlab/rank.hpp"

namespace wittenlab {

CubicalFiltration build_filtration(const SampledField& field) {
    const GridTopology& t = field.topology;
    CubicalFiltration f;
    f.topology = t;
    f.source_hash = field.hash();
    int V = t.node_count(), E = t.edge_count(), F = t.face_count();
    f.n_vertices = V;
    f.n_edges = E;
    f.n_faces = F;
    int n = V + E + F;
    f.value.resize(n);
    f.dim.resize(n);
    f.faces.assign(n, {-1, -1, -1, -1});
    f.signs.assign(n, {0, 0, 0, 0});

    for (int v = 0; v < V; ++v) {
        f.value[v] = field.values[v];
        f.dim[v] = 0;
    }
    auto set_edge = [&](int e, int va, int vb) {
        // oriented va -> vb
        f.value[V + e] = std::max(field.values[va], field.values[vb]);
        f.dim[V + e] = 1;
        f.faces[V + e] = {va, vb, -1, -1};
        f.signs[V + e] = {-1, 1, 0, 0};
    };
    if (t.kind == GridTopology::Kind::Torus) {
        int nx = t.nx, ny = t.ny;
        auto vid = [&](int i, int j) { return ((j % ny + ny) % ny) * nx + ((i % nx + nx) % nx); };
        auto ex = [&](int i, int j) { return vid(i, j); };                 // x-edge id offset
        auto ey = [&](int i, int j) { return nx * ny + vid(i, j); };       // y-edge id offset
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                set_edge(ex(i, j), vid(i, j), vid(i + 1, j));
                set_edge(ey(i, j), vid(i, j), vid(i, j + 1));
            }
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                int c = V + E + vid(i, j);
                // square [i,i+1]x[j,j+1]: d = ex(i,j) + ey(i+1,j) - ex(i,j+1) - ey(i,j)
                int b0 = V + ex(i, j), b1 = V + ey(i + 1, j), b2 = V + ex(i, j + 1),
                    b3 = V + ey(i, j);
                f.faces[c] = {b0, b1, b2, b3};
                f.signs[c] = {1, 1, -1, -1};
                f.value[c] = std::max(std::max(f.value[b0], f.value[b1]),
                                      std::max(f.value[b2], f.value[b3]));
                f.dim[c] = 2;
            }
    } else {
        for (int e = 0; e < E; ++e) set_edge(e, e, (e + 1) % t.nx);
    }

    f.order.resize(n);
    std::iota(f.order.begin(), f.order.end(), 0);
    std::sort(f.order.begin(), f.order.end(), [&](int a, int b) {
        if (f.value[a] != f.value[b]) return f.value[a] < f.value[b];
        if (f.dim[a] != f.dim[b]) return f.dim[a] < f.dim[b];
        return a < b;
    });
    f.position.resize(n);
    for (int p = 0; p < n; ++p) f.position[f.order[p]] = p;
    return f;
}

namespace {

// GF(2) reduction with columns as sorted position lists.
void xor_into(std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    a.swap(out);
}

struct Pairing {
    std::vector<std::pair<int, int>> pairs;  // (birth position, death position)
    std::vector<int> unpaired;               // positions of essential creators
};

Pairing reduce_gf2(const CubicalFiltration& f) {
    int n = f.cell_count();
    std::vector<std::vector<int>> cols(n);
    std::vector<int> owner(n, -1);  // low position -> column position owning it
    Pairing out;
    std::vector<char> is_destroyer(n, 0);
    for (int pos = 0; pos < n; ++pos) {
        int cell = f.order[pos];
        std::vector<int> col;
        for (int k = 0; k < 4; ++k) {
            int fc = f.faces[cell][k];
            if (fc >= 0 && (f.signs[cell][k] & 1)) col.push_back(f.position[fc]);
        }
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            int low = col.back();
            if (owner[low] < 0) break;
            xor_into(col, cols[owner[low]]);
        }
        if (!col.empty()) {
            int low = col.back();
            owner[low] = pos;
            cols[pos] = std::move(col);
            out.pairs.push_back({low, pos});
            is_destroyer[pos] = 1;
        }
    }
    std::vector<char> killed(n, 0);
    for (auto& [b, d] : out.pairs) killed[b] = 1;
    for (int pos = 0; pos < n; ++pos)
        if (!killed[pos] && !is_destroyer[pos]) out.unpaired.push_back(pos);
    return out;
}

// Generic GF(p) reduction, columns as sorted (position, coeff) lists.
Pairing reduce_gfp(const CubicalFiltration& f, int64_t p) {
    int n = f.cell_count();
    using Col = std::vector<std::pair<int, int64_t>>;
    auto modp = [p](int64_t x) {
        int64_t r = x % p;
        return r < 0 ? r + p : r;
    };
    auto inv = [&](int64_t x) {
        int64_t e = p - 2, b = modp(x), r = 1;
        while (e) {
            if (e & 1) r = (__int128)r * b % p;
            b = (__int128)b * b % p;
            e >>= 1;
        }
        return r;
    };
    auto axpy = [&](Col& a, int64_t factor, const Col& b) {
        Col out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
                out.push_back(a[i++]);
            else if (i == a.size() || b[j].first < a[i].first) {
                int64_t c = modp(factor * b[j].second % p);
                if (c) out.push_back({b[j].first, c});
                ++j;
            } else {
                int64_t c = modp(a[i].second + factor * b[j].second % p);
                if (c) out.push_back({a[i].first, c});
                ++i;
                ++j;
            }
        }
        a.swap(out);
    };
    std::vector<Col> cols(n);
    std::vector<int> owner(n, -1);
    Pairing out;
    std::vector<char> is_destroyer(n, 0);
    for (int pos = 0; pos < n; ++pos) {
        int cell = f.order[pos];
        Col col;
        for (int k = 0; k < 4; ++k) {
            int fc = f.faces[cell][k];
            if (fc >= 0) {
                int64_t c = modp(f.signs[cell][k]);
                if (c) col.push_back({f.position[fc], c});
            }
        }
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            int low = col.back().first;
            if (owner[low] < 0) break;
            const Col& oc = cols[owner[low]];
            int64_t factor = modp(-(__int128)col.back().second * inv(oc.back().second) % p);
            axpy(col, factor, oc);
        }
        if (!col.empty()) {
            owner[col.back().first] = pos;
            out.pairs.push_back({col.back().first, pos});
            is_destroyer[pos] = 1;
            cols[pos] = std::move(col);
        }
    }
    std::vector<char> killed(n, 0);
    for (auto& [b, d] : out.pairs) killed[b] = 1;
    for (int pos = 0; pos < n; ++pos)
        if (!killed[pos] && !is_destroyer[pos]) out.unpaired.push_back(pos);
    return out;
}

}  // namespace

BarCode barcode(const CubicalFiltration& f, int64_t field_p) {
    if (field_p < 2 || !is_prime(field_p))
        throw std::invalid_argument("barcode: coefficient field must be a prime");
    Pairing pr = (field_p == 2) ? reduce_gf2(f) : reduce_gfp(f, field_p);
    BarCode bc;
    bc.coefficient_field = "gf" + std::to_string(field_p);
    bc.source_hash = f.source_hash;
    for (auto& [bpos, dpos] : pr.pairs) {
        int bcell = f.order[bpos], dcell = f.order[dpos];
        double vb = f.value[bcell], vd = f.value[dcell];
        if (vb == vd) continue;  // zero-length pair
        Bar bar;
        bar.degree = f.dim[bcell];
        bar.birth = vb;
        bar.death = vd;
        bar.birth_cell = bcell;
        bar.death_cell = dcell;
        bc.bars.push_back(bar);
    }
    for (int pos : pr.unpaired) {
        int cell = f.order[pos];
        Bar bar;
        bar.degree = f.dim[cell];
        bar.birth = f.value[cell];
        bar.death = kInf;
        bar.birth_cell = cell;
        bc.bars.push_back(bar);
    }
    std::sort(bc.bars.begin(), bc.bars.end(), [](const Bar& a, const Bar& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return bc;
}

std::vector<const Bar*> BarCode::of_degree(int p) const {
    std::vector<const Bar*> out;
    for (const auto& b : bars)
        if (b.degree == p) out.push_back(&b);
    return out;
}

int BarCode::max_degree() const {
    int m = 0;
    for (const auto& b : bars) m = std::max(m, b.degree);
    return m;
}

int bar_counting_betti(const BarCode& bc, const LevelWindow& w, int degree) {
    int count = 0;
    for (const auto& b : bc.bars) {
        if (b.degree == degree && w.contains(b.birth) && !(b.finite() && w.contains(b.death)))
            ++count;
        if (b.degree == degree - 1 && b.finite() && w.contains(b.death) && !w.contains(b.birth))
            ++count;
    }
    return count;
}

bool CriticalLevels::is_critical(double v) const {
    return std::binary_search(levels.begin(), levels.end(), v);
}

CriticalLevels critical_levels(const SampledField&, const BarCode& bc) {
    CriticalLevels out;
    for (const auto& b : bc.bars) {
        out.levels.push_back(b.birth);
        if (b.finite()) out.levels.push_back(b.death);
    }
    if (out.levels.empty())
        throw std::runtime_error("critical_levels: bar code has no endpoints (empty landscape)");
    std::sort(out.levels.begin(), out.levels.end());
    out.levels.erase(std::unique(out.levels.begin(), out.levels.end()), out.levels.end());
    if (out.levels.size() == 1) {
        out.single_level = true;
        return out;
    }
    double gap = kInf;
    for (size_t i = 1; i < out.levels.size(); ++i)
        gap = std::min(gap, out.levels[i] - out.levels[i - 1]);
    out.min_gap = gap;
    out.eta_f = 0.25 * gap;
    return out;
}

std::string barcode_to_json(const BarCode& bc) {
    nlohmann::ordered_json j;
    j["coefficient_field"] = bc.coefficient_field;
    j["source_hash"] = bc.source_hash;
    j["bars"] = nlohmann::ordered_json::array();
    for (const auto& b : bc.bars) {
        nlohmann::ordered_json jb;
        jb["degree"] = b.degree;
        jb["birth"] = b.birth;
        if (b.finite())
            jb["death"] = b.death;
        else
            jb["death"] = "inf";
        j["bars"].push_back(jb);
    }
    return j.dump(2);
}

BarCode barcode_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    BarCode bc;
    bc.coefficient_field = j.value("coefficient_field", "gf2");
    bc.source_hash = j.value("source_hash", "");
    for (const auto& jb : j.at("bars")) {
        Bar b;
        b.degree = jb.at("degree").get<int>();
        b.birth = jb.at("birth").get<double>();
        if (jb.at("death").is_string())
            b.death = kInf;
        else
            b.death = jb.at("death").get<double>();
        bc.bars.push_back(b);
    }
    return bc;
}

}  // namespace wittenlab
