#include "wittenlab/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "json.hpp"

namespace wittenlab {

namespace {

// Hopcroft-Karp maximum bipartite matching.
class HopcroftKarp {
  public:
    HopcroftKarp(int nl, int nr) : nl_(nl), nr_(nr), adj_(nl) {}
    void add_edge(int l, int r) { adj_[l].push_back(r); }

    int solve() {
        match_l_.assign(nl_, -1);
        match_r_.assign(nr_, -1);
        int matching = 0;
        while (bfs()) {
            for (int u = 0; u < nl_; ++u)
                if (match_l_[u] < 0 && dfs(u)) ++matching;
        }
        return matching;
    }
    const std::vector<int>& left_match() const { return match_l_; }

  private:
    bool bfs() {
        std::queue<int> q;
        dist_.assign(nl_, -1);
        for (int u = 0; u < nl_; ++u)
            if (match_l_[u] < 0) {
                dist_[u] = 0;
                q.push(u);
            }
        bool found = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj_[u]) {
                int w = match_r_[v];
                if (w < 0)
                    found = true;
                else if (dist_[w] < 0) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }
    bool dfs(int u) {
        for (int v : adj_[u]) {
            int w = match_r_[v];
            if (w < 0 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_l_[u] = v;
                match_r_[v] = u;
                return true;
            }
        }
        dist_[u] = -2;
        return false;
    }

    int nl_, nr_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_l_, match_r_, dist_;
};

struct FiniteBars {
    std::vector<double> birth, death, half;
};

double pair_cost(const FiniteBars& a, int i, const FiniteBars& b, int j) {
    return std::max(std::fabs(a.birth[i] - b.birth[j]), std::fabs(a.death[i] - b.death[j]));
}

// Perfect matching feasibility at threshold t, diagonal allowed; returns the
// witness assignment of B1 bars (index into B2 or -1 for diagonal).
bool feasible(const FiniteBars& a, const FiniteBars& b, double t, std::vector<int>* witness) {
    int n1 = static_cast<int>(a.birth.size());
    int n2 = static_cast<int>(b.birth.size());
    // left: [0,n1) bars of B1, [n1, n1+n2) diagonal copies for B2
    // right: [0,n2) bars of B2, [n2, n2+n1) diagonal copies for B1
    HopcroftKarp hk(n1 + n2, n2 + n1);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j)
            if (pair_cost(a, i, b, j) <= t) hk.add_edge(i, j);
        if (a.half[i] <= t) hk.add_edge(i, n2 + i);
    }
    for (int j = 0; j < n2; ++j) {
        if (b.half[j] <= t) hk.add_edge(n1 + j, j);
        for (int i = 0; i < n1; ++i) hk.add_edge(n1 + j, n2 + i);
    }
    bool ok = hk.solve() == n1 + n2;
    if (ok && witness) {
        witness->assign(n1, -1);
        for (int i = 0; i < n1; ++i) {
            int m = hk.left_match()[i];
            (*witness)[i] = (m >= 0 && m < n2) ? m : -1;
        }
    }
    return ok;
}

}  // namespace

BottleneckResult bottleneck_distance(const BarCode& b1, const BarCode& b2, int degree) {
    BottleneckResult res;
    FiniteBars fa, fb;
    std::vector<double> ea, eb;
    for (const auto& b : b1.bars)
        if (b.degree == degree) {
            if (b.finite()) {
                fa.birth.push_back(b.birth);
                fa.death.push_back(b.death);
                fa.half.push_back(0.5 * b.length());
            } else
                ea.push_back(b.birth);
        }
    for (const auto& b : b2.bars)
        if (b.degree == degree) {
            if (b.finite()) {
                fb.birth.push_back(b.birth);
                fb.death.push_back(b.death);
                fb.half.push_back(0.5 * b.length());
            } else
                eb.push_back(b.birth);
        }

    if (ea.size() != eb.size()) {
        res.infinite = true;
        res.distance = kInf;
        return res;
    }
    double d_ess = 0;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    for (size_t k = 0; k < ea.size(); ++k) d_ess = std::max(d_ess, std::fabs(ea[k] - eb[k]));

    std::vector<double> cand = {0.0};
    int n1 = static_cast<int>(fa.birth.size());
    int n2 = static_cast<int>(fb.birth.size());
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) cand.push_back(pair_cost(fa, i, fb, j));
    for (double h : fa.half) cand.push_back(h);
    for (double h : fb.half) cand.push_back(h);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    int lo = 0, hi = static_cast<int>(cand.size()) - 1;
    if (!feasible(fa, fb, cand[hi], nullptr))
        throw std::logic_error("bottleneck: largest candidate infeasible");
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (feasible(fa, fb, cand[mid], nullptr))
            hi = mid;
        else
            lo = mid + 1;
    }
    std::vector<int> witness;
    feasible(fa, fb, cand[lo], &witness);
    res.distance = std::max(cand[lo], d_ess);
    res.witness.cost = res.distance;
    for (int i = 0; i < n1; ++i) res.witness.pairs.push_back({i, witness[i]});
    return res;
}

StabilityReport stability_audit(const SampledField& f, const SampledField& g, int64_t field_p) {
    if (!(f.topology == g.topology))
        throw std::invalid_argument("stability_audit: fields live on different topologies");
    StabilityReport rep;
    double scale = 0;
    for (size_t i = 0; i < f.values.size(); ++i) {
        rep.sup_diff = std::max(rep.sup_diff, std::fabs(f.values[i] - g.values[i]));
        scale = std::max({scale, std::fabs(f.values[i]), std::fabs(g.values[i])});
    }
    rep.tolerance = 1e-12 * std::max(1.0, scale);
    BarCode bf = barcode(build_filtration(f), field_p);
    BarCode bg = barcode(build_filtration(g), field_p);
    int dmax = f.topology.dim();
    rep.pass = true;
    for (int p = 0; p <= dmax; ++p) {
        auto r = bottleneck_distance(bf, bg, p);
        rep.per_degree.push_back(r.distance);
        if (!(r.distance <= rep.sup_diff + rep.tolerance)) rep.pass = false;
    }
    return rep;
}

std::string stability_report_to_json(const StabilityReport& r) {
    nlohmann::ordered_json j;
    j["sup_diff"] = r.sup_diff;
    j["tolerance"] = r.tolerance;
    j["bottleneck_per_degree"] = r.per_degree;
    j["pass"] = r.pass;
    return j.dump(2);
}

}  // namespace wittenlab
