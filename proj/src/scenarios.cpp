#include "wittenlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"
#include "wittenlab/field_io.hpp"
#include "wittenlab/prefactor.hpp"
#include "wittenlab/relative_betti.hpp"

namespace wittenlab {

namespace {
const double pi = 3.14159265358979323846;
}

void Scenario::validate() const {
    if (h.empty()) throw std::invalid_argument("scenario: h list is required");
    for (double v : h)
        if (!(v > 0)) throw std::invalid_argument("scenario: h values must be positive");
    for (size_t i = 1; i < h.size(); ++i)
        if (!(h[i] < h[i - 1]))
            throw std::invalid_argument("scenario: h values must be strictly decreasing");
    if (input.empty() && !is_builtin(name))
        throw std::invalid_argument("scenario: unknown builtin '" + name + "'");
}

// ---------------------------------------------------------------- builtins

DesignedLandscape double_well_landscape() {
    std::vector<Knot> knots = {
        {0.0, 1.3, 0.0, -1.2},   // global maximum
        {1.8, -1.0, 0.0, 1.1},   // global minimum
        {3.3, 0.75, 0.0, -0.9},  // lower saddle (kills the second well)
        {4.9, -0.45, 0.0, 1.4},  // second minimum
    };
    return DesignedLandscape(std::move(knots), 2 * pi);
}

DesignedLandscape degenerate_min_landscape(double delta) {
    const double e0 = 0.6;
    auto q = [delta](double x) {
        return (x * x * x * x + 2 * delta * x * x + (delta < 0 ? delta * delta : 0.0)) / 4.0;
    };
    double qv = q(e0);
    double qs = e0 * e0 * e0 + delta * e0;       // q'
    double qc = 3 * e0 * e0 + delta;             // q''
    std::vector<Knot> knots = {
        {e0, qv, qs, qc},
        {pi / 2, 1.0, 0.0, -1.0},   // saddle, second derivative -1
        {pi, -1.0, 0.0, 1.0},       // global minimum
        {3 * pi / 2, 2.0, 0.0, -1.5},  // global maximum
        {2 * pi - e0, qv, -qs, qc},
    };
    SegmentOverride core;
    core.x0 = 2 * pi - e0;
    core.x1 = e0;
    core.eval = [q](double x) { return q(x - 2 * pi); };
    return DesignedLandscape(std::move(knots), 2 * pi, {core});
}

double piecewise_affine_eval(double x) {
    x = std::fmod(x, 4.0);
    if (x < 0) x += 4.0;
    static const double vf[5] = {0.0, 1.0, 0.3, 1.2, 0.0};
    int k = std::min(3, (int)x);
    return vf[k] + (vf[k + 1] - vf[k]) * (x - k);
}

namespace {

double mexican_hat_eval(double x, double y) {
    const double r0 = 1.4, plateau = 1.0, w = 0.15;
    double r = std::hypot(x, y);
    double rho;
    if (r <= r0)
        rho = (r * r - 1.0) * (r * r - 1.0) / 4.0;
    else {
        double p0 = (r0 * r0 - 1.0) * (r0 * r0 - 1.0) / 4.0;
        double s0 = r0 * (r0 * r0 - 1.0);
        rho = p0 + s0 * (r - r0);
    }
    if (rho <= plateau - w) return rho;
    if (rho >= plateau + w) return plateau;
    double t = rho - (plateau - w);
    return rho - t * t / (4.0 * w);
}

}  // namespace

bool is_builtin(const std::string& name) {
    for (const auto& n : builtin_names())
        if (n == name) return true;
    return false;
}

std::vector<std::string> builtin_names() {
    return {"cosine",         "double_well_1d",   "kwell_symmetric", "piecewise_affine_1d",
            "degenerate_min", "mexican_hat_2d",   "torus_flat"};
}

SampledField builtin_field(const Scenario& s) {
    if (s.name == "cosine") {
        return sample({"cosine", [](double x, double) { return std::cos(x); }},
                      GridTopology::circle(256, 2 * pi / 256));
    }
    if (s.name == "double_well_1d") {
        auto l = double_well_landscape();
        return sample(l.expr("double_well_1d"), GridTopology::circle(1024, 2 * pi / 1024));
    }
    if (s.name == "kwell_symmetric") {
        int K = s.kwell_k;
        if (K < 2 || 1024 % K != 0)
            throw std::invalid_argument("kwell_symmetric: K must be >= 2 and divide 1024");
        return sample({"kwell", [K](double x, double) { return std::cos(K * x); }},
                      GridTopology::circle(1024, 2 * pi / 1024));
    }
    if (s.name == "piecewise_affine_1d") {
        return sample({"piecewise_affine", [](double x, double) { return piecewise_affine_eval(x); }},
                      GridTopology::circle(2048, 4.0 / 2048));
    }
    if (s.name == "degenerate_min") {
        auto l = degenerate_min_landscape(s.delta);
        return sample(l.expr("degenerate_min"), GridTopology::circle(1024, 2 * pi / 1024));
    }
    if (s.name == "mexican_hat_2d") {
        return sample({"mexican_hat", mexican_hat_eval},
                      GridTopology::torus(128, 128, 3.5 / 128, {-1.75, -1.75}));
    }
    if (s.name == "torus_flat") {
        return sample({"flat", [](double, double) { return 0.0; }},
                      GridTopology::torus(16, 16, 2 * pi / 16));
    }
    throw std::invalid_argument("unknown builtin '" + s.name + "'");
}

DesignedLandscape random_1d_landscape(uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uni = [&rng](double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0, 1)(rng);
    };
    for (int attempt = 0; attempt < 500; ++attempt) {
        double m2 = uni(0.55, 0.75);
        double s_lo = uni(1.5, 1.7);
        double s_hi = uni(s_lo + 0.45, 2.3);
        if (s_lo - m2 > 1.05) continue;
        // positions: four jittered slots; the lower saddle position is random
        double base = 2 * pi / 4;
        double x[4];
        for (int i = 0; i < 4; ++i) x[i] = base * i + uni(-0.15, 0.15) * base;
        bool low_first = rng() & 1;
        std::vector<Knot> knots = {
            {x[0], 0.0, 0.0, uni(1.0, 2.5)},
            {x[1], low_first ? s_lo : s_hi, 0.0, -uni(1.0, 2.5)},
            {x[2], m2, 0.0, uni(1.0, 2.5)},
            {x[3], low_first ? s_hi : s_lo, 0.0, -uni(1.0, 2.5)},
        };
        DesignedLandscape l(std::move(knots), 2 * pi);
        if (!l.extrema_match_design()) continue;
        return l;
    }
    throw std::runtime_error("random_1d_landscape: rejection sampling failed");
}

FieldExpr random_torus_landscape(uint64_t seed, double* min_curvature) {
    std::mt19937_64 rng(seed);
    auto uni = [&rng](double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0, 1)(rng);
    };
    for (int attempt = 0; attempt < 500; ++attempt) {
        double m2 = uni(0.55, 0.65);
        double s1 = uni(1.2, 1.35);
        double s2 = uni(1.8, 1.95);
        double wM = uni(3.2, 3.45);
        double cmin = 5.0;
        auto curv = [&]() {
            double c = uni(2.0, 3.0);
            cmin = std::min(cmin, c);
            return c;
        };
        double base = 2 * pi / 4;
        std::vector<Knot> gk = {
            {0.35 + uni(-0.1, 0.1), 0.0, 0.0, curv()},
            {base + uni(-0.1, 0.1), s1, 0.0, -curv()},
            {2 * base + uni(-0.1, 0.1), m2, 0.0, curv()},
            {3 * base + uni(-0.1, 0.1), s2, 0.0, -curv()},
        };
        std::vector<Knot> wk = {
            {0.2 + uni(-0.1, 0.1), 0.0, 0.0, curv()},
            {pi + uni(-0.1, 0.1), wM, 0.0, -curv()},
        };
        DesignedLandscape g(std::move(gk), 2 * pi);
        DesignedLandscape w(std::move(wk), 2 * pi);
        if (!g.extrema_match_design() || !w.extrema_match_design()) continue;
        if (min_curvature) *min_curvature = cmin;
        return {"random_torus", [g, w](double x, double y) { return g(x) + w(y); }};
    }
    throw std::runtime_error("random_torus_landscape: rejection sampling failed");
}

// ---------------------------------------------------------------- config

namespace {

std::vector<double> parse_double_list(const std::string& v, const std::string& what, int line) {
    std::vector<double> out;
    std::istringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw std::invalid_argument("config line " + std::to_string(line) + ": bad " + what +
                                        " entry '" + tok + "'");
        }
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Scenario parse_config_text(const std::string& text, const std::string& origin) {
    Scenario s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string section;
    bool have_h = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument(origin + " line " + std::to_string(lineno) +
                                            ": unterminated section header");
            section = t.substr(1, t.size() - 2);
            if (section != "scenario")
                throw std::invalid_argument(origin + " line " + std::to_string(lineno) +
                                            ": unknown section [" + section + "]");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + " line " + std::to_string(lineno) +
                                        ": expected key = value");
        if (section.empty())
            throw std::invalid_argument(origin + " line " + std::to_string(lineno) +
                                        ": key outside the [scenario] section");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key == "name")
            s.name = val;
        else if (key == "input")
            s.input = val;
        else if (key == "window") {
            if (val != "full") {
                auto parts = parse_double_list(val, "window", lineno);
                if (parts.size() != 2)
                    throw std::invalid_argument(origin + " line " + std::to_string(lineno) +
                                                ": window needs 'a,b' or 'full'");
                s.window = LevelWindow::of(parts[0], parts[1]);
            }
        } else if (key == "h") {
            s.h = parse_double_list(val, "h", lineno);
            have_h = true;
        } else if (key == "degrees") {
            for (double d : parse_double_list(val, "degrees", lineno)) s.degrees.push_back((int)d);
        } else if (key == "prefactor")
            s.prefactor_model = val;
        else if (key == "out")
            s.out_dir = val;
        else if (key == "seed")
            s.seed = std::stoull(val);
        else if (key == "field_coeff")
            s.field_coeff = std::stoll(val);
        else if (key == "K")
            s.kwell_k = std::stoi(val);
        else if (key == "delta")
            s.delta = std::stod(val);
        else
            throw std::invalid_argument(origin + " line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    if (!have_h)
        throw std::invalid_argument(origin + ": missing required key 'h' in [scenario]");
    s.validate();
    return s;
}

Scenario parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string serialize_config(const Scenario& s) {
    std::ostringstream out;
    out << "[scenario]\n";
    out << "name = " << s.name << "\n";
    if (!s.input.empty()) out << "input = " << s.input << "\n";
    if (s.window)
        out << "window = " << s.window->a << "," << s.window->b << "\n";
    else
        out << "window = full\n";
    out << "h = ";
    for (size_t i = 0; i < s.h.size(); ++i) out << (i ? "," : "") << s.h[i];
    out << "\n";
    if (!s.degrees.empty()) {
        out << "degrees = ";
        for (size_t i = 0; i < s.degrees.size(); ++i) out << (i ? "," : "") << s.degrees[i];
        out << "\n";
    }
    if (!s.prefactor_model.empty()) out << "prefactor = " << s.prefactor_model << "\n";
    if (!s.out_dir.empty()) out << "out = " << s.out_dir << "\n";
    out << "seed = " << s.seed << "\n";
    out << "field_coeff = " << s.field_coeff << "\n";
    if (s.name == "kwell_symmetric") out << "K = " << s.kwell_k << "\n";
    if (s.name == "degenerate_min") out << "delta = " << s.delta << "\n";
    return out.str();
}

// ---------------------------------------------------------------- pipeline

void block_prediction(const SpectralPrediction& pred, const GridTopology& topo, int block,
                      int& zero_count, std::vector<double>& rates, std::vector<int>& bars) {
    rates.clear();
    bars.clear();
    // nonzero small singular values of d^(p) <-> X^(p); the kernel of the
    // block Gram is the harmonic space of the smaller side
    int p = block;
    if (p < (int)pred.degree.size()) {
        for (const auto& r : pred.degree[p].rates)
            if (r.from_x) {
                rates.push_back(r.rate);
                bars.push_back(r.bar);
            }
    }
    // rates are stored descending already within a degree, but filtering may
    // break ties ordering; re-sort with ids attached
    std::vector<size_t> idx(rates.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return rates[a] > rates[b]; });
    std::vector<double> r2(rates.size());
    std::vector<int> b2(bars.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        r2[i] = rates[idx[i]];
        b2[i] = bars[idx[i]];
    }
    rates.swap(r2);
    bars.swap(b2);

    bool torus = topo.kind == GridTopology::Kind::Torus;
    int gram_degree;
    if (block == 0)
        gram_degree = 0;  // node-side Gram = Delta^0
    else if (torus && block == 1)
        gram_degree = 2;  // face-side Gram = Delta^2
    else
        throw std::invalid_argument("block_prediction: unsupported block for this topology");
    zero_count = gram_degree < (int)pred.degree.size()
                     ? pred.degree[gram_degree].zero_multiplicity
                     : 0;
}

int thread_cap_from_env() {
    const char* v = std::getenv("WITTENLAB_THREADS");
    if (!v) return 0;
    int n = std::atoi(v);
    return n > 0 ? n : 0;
}

namespace {

struct ScenarioChecks {
    bool pass = true;
    std::map<std::string, double> metrics;
    std::string why;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            why = what;
        }
    }
};

double ek_reference_double_well() {
    // sqrt(f''(second min) |f''(lower saddle)|) from the designed landscape
    return std::sqrt(1.4 * 0.9);
}

void scenario_checks(const Scenario& s, const RunResult& rr, ScenarioChecks& ck) {
    auto block_of = [&](int p) -> const BlockRun* {
        for (const auto& b : rr.blocks)
            if (b.block == p) return &b;
        return nullptr;
    };
    if (s.name == "cosine" || s.name == "torus_flat") {
        for (const auto& b : rr.blocks) {
            ck.require(b.rates.empty(), "expected no finite bars");
            const auto& last = b.counts.back();
            ck.metrics["kernel_block" + std::to_string(b.block)] = last.kernel;
            ck.require(last.kernel == b.zero_count, "kernel count mismatch");
            ck.require(last.small_nonzero == 0, "unexpected small nonzero singular value");
        }
        return;
    }
    if (s.name == "double_well_1d") {
        const BlockRun* b = block_of(0);
        if (!b || b->fit.rates.empty()) {
            ck.require(false, "missing degree-0 fit");
            return;
        }
        const auto& mr = b->fit.rates.front();
        double rel = std::fabs(mr.intercept - mr.rate_pred) / mr.rate_pred;
        ck.metrics["intercept"] = mr.intercept;
        ck.metrics["intercept_rel_err"] = rel;
        ck.require(rel <= 0.05, "rate intercept misses 2*length by more than 5%");
        // Eyring-Kramers prefactor at each h, against the designed Hessians
        double ref = ek_reference_double_well();
        double prev = kInf;
        bool monotone = true;
        double final_err = 0;
        for (size_t i = 0; i < mr.h.size(); ++i) {
            double h = mr.h[i];
            double ratio = std::exp(mr.log_lambda[i] + mr.rate_pred / h) * pi / h / ref;
            double err = std::fabs(ratio - 1.0);
            if (err > prev + 1e-3) monotone = false;
            prev = err;
            final_err = err;
            ck.metrics["ek_err_h" + std::to_string(i)] = err;
        }
        ck.metrics["ek_err_final"] = final_err;
        ck.require(final_err <= 0.10, "Eyring-Kramers prefactor off by more than 10%");
        ck.require(monotone, "Eyring-Kramers error not improving monotonically");
        ck.metrics["power"] = mr.power;
        ck.require(std::fabs(mr.power - 1.0) <= 0.05, "prefactor power outside 1.00 +- 0.05");
        return;
    }
    if (s.name == "degenerate_min") {
        const BlockRun* b = block_of(0);
        if (!b || b->fit.rates.empty()) {
            ck.require(false, "missing degree-0 fit");
            return;
        }
        const auto& mr = b->fit.rates.front();
        ck.metrics["power"] = mr.power;
        ck.metrics["intercept"] = mr.intercept;
        if (s.delta == 0.0)
            ck.require(std::fabs(mr.power - 1.25) <= 0.10, "prefactor power outside 1.25 +- 0.10");
        return;
    }
    if (s.name == "kwell_symmetric") {
        const BlockRun* b = block_of(0);
        if (!b) {
            ck.require(false, "missing degree-0 block");
            return;
        }
        auto pattern = circulant_singular_values(s.kwell_k);  // 2 sin(pi k/K)
        std::vector<double> want;
        for (double v : pattern)
            if (v > 1e-12) want.push_back(v * v);
        std::sort(want.begin(), want.end());
        for (const auto& o : b->obs) {
            int z = b->zero_count;
            if ((int)o.sigma.size() < z + (int)want.size()) {
                ck.require(false, "too few singular values observed");
                return;
            }
            std::vector<double> lam;
            for (size_t i = z; i < z + want.size(); ++i) lam.push_back(o.sigma[i] * o.sigma[i]);
            for (size_t i = 0; i < want.size(); ++i) {
                double ratio = (lam[i] / lam[0]) / (want[i] / want[0]);
                ck.metrics["ratio_k" + std::to_string(i)] = lam[i] / lam[0];
                ck.require(std::fabs(ratio - 1.0) <= 0.05,
                           "eigenvalue ratio off the |1-omega^k|^2 pattern by more than 5%");
            }
        }
        return;
    }
    if (s.name == "piecewise_affine_1d") {
        const BlockRun* b = block_of(0);
        if (!b || b->fit.rates.empty()) {
            ck.require(false, "missing degree-0 fit");
            return;
        }
        const auto& mr = b->fit.rates.front();
        double href = 2.0 * 0.7 / 1.7 * (2.0 * 0.9 * 0.7 / 1.6);  // H[0.7,1] * H[0.9,0.7]
        size_t last = mr.h.size() - 1;
        double ratio = std::exp(mr.log_lambda[last] + mr.rate_pred / mr.h[last]) / href;
        ck.metrics["pa_ratio"] = ratio;
        ck.metrics["power"] = mr.power;
        ck.require(std::fabs(ratio - 1.0) <= 0.10, "harmonic-mean prefactor off by more than 10%");
        ck.require(std::fabs(mr.power) <= 0.10, "piecewise-affine power drift exceeds 0.1");
        return;
    }
    if (s.name == "mexican_hat_2d") {
        const BlockRun* b = block_of(1);
        if (!b || b->fit.rates.empty()) {
            ck.require(false, "missing degree-1 fit");
            return;
        }
        for (const auto& c : b->counts) {
            ck.require(c.kernel == b->zero_count, "d1 block kernel count mismatch");
            ck.require(c.small_nonzero == 1, "expected exactly one small nonzero singular value");
        }
        const auto& mr = b->fit.rates.front();
        ck.metrics["intercept"] = mr.intercept;
        ck.metrics["power"] = mr.power;
        double rel = std::fabs(mr.intercept - 0.5) / 0.5;
        ck.metrics["intercept_rel_err"] = rel;
        ck.require(rel <= 0.08, "rate intercept misses 1/2 by more than 8%");
        ck.require(std::fabs(mr.power - 0.5) <= 0.15, "prefactor power outside 0.5 +- 0.15");
        return;
    }
    // file-input scenario: the fit consistency itself is the check
}

}  // namespace

RunResult run_scenario(const Scenario& s) {
    s.validate();
    RunResult rr;
    SampledField field;
    try {
        field = s.input.empty() ? builtin_field(s) : read_field_auto(s.input);
    } catch (const std::exception& e) {
        rr.exit_code = s.input.empty() ? kFieldError : kIoError;
        rr.message = e.what();
        return rr;
    }
    CubicalFiltration fil = build_filtration(field);
    try {
        rr.bc = barcode(fil, s.field_coeff);
        rr.levels = critical_levels(field, rr.bc);
    } catch (const std::exception& e) {
        rr.exit_code = kFieldError;
        rr.message = e.what();
        return rr;
    }
    LevelWindow window = s.window.value_or(LevelWindow::full());
    EndpointClassification cls;
    try {
        cls = classify(rr.bc, window, rr.levels);
    } catch (const std::exception& e) {
        rr.exit_code = kWindowError;
        rr.message = e.what();
        return rr;
    }
    rr.prediction = predict_window_spectrum(cls, rr.bc, rr.levels);

    bool torus = field.topology.kind == GridTopology::Kind::Torus;
    std::vector<int> blocks = s.degrees;
    if (blocks.empty()) blocks = torus ? std::vector<int>{0, 1} : std::vector<int>{0};

    std::optional<WindowDomain> dom;
    if (s.window) {
        try {
            dom = make_window_domain(field, window, rr.levels);
        } catch (const std::exception& e) {
            rr.exit_code = kWindowError;
            rr.message = e.what();
            return rr;
        }
    }

    double span = rr.levels.span();
    double eta = rr.levels.eta_f.value_or(0.0);
    for (int p : blocks) {
        BlockRun br;
        br.block = p;
        try {
            block_prediction(rr.prediction, field.topology, p, br.zero_count, br.rates,
                             br.bar_ids);
        } catch (const std::exception& e) {
            rr.exit_code = kUsage;
            rr.message = e.what();
            return rr;
        }
        if (p == 1 && dom) {
            rr.exit_code = kWindowError;
            rr.message = "window domains are only assembled for the d0 block";
            return rr;
        }
        int need = br.zero_count + (int)br.rates.size();
        br.obs.resize(s.h.size());
        br.counts.resize(s.h.size());
        for (size_t hi = 0; hi < s.h.size(); ++hi) {
            double h = s.h[hi];
            WittenOperator op = (p == 0)
                                    ? (dom ? assemble_d0(field, h, *dom) : assemble_d0(field, h))
                                    : assemble_d1_torus(field, h);
            SmallSvOptions opt;
            opt.seed = s.seed + 1000 * hi + p;
            opt.side = (p == 0) ? GramSide::Columns : GramSide::Rows;
            int side_dim = (p == 0) ? op.d.cols() : op.d.rows();
            auto sv = smallest_singular_values(op.d, std::min(need + 4, side_dim), opt);
            if (!sv.converged) {
                rr.exit_code = kSolverFail;
                rr.message = "singular value solver did not converge (partial result)";
            }
            br.iterative = !sv.dense_path;
            br.sigma_max = sv.sigma_max;
            br.accuracy_floor = sv.accuracy_floor;
            br.obs[hi].h = h;
            br.obs[hi].sigma = sv.sigma;
            br.counts[hi] = count_small_singular_values(sv, h, span, eta);
        }
        br.fit = match_and_fit(br.obs, br.zero_count, br.rates, br.bar_ids);
        if (!br.fit.ok && !br.rates.empty()) {
            rr.exit_code = kCountMismatch;
            rr.message = br.fit.mismatch;
        }
        rr.blocks.push_back(std::move(br));
    }

    ScenarioChecks ck;
    if (rr.exit_code == kOk) {
        scenario_checks(s, rr, ck);
        rr.metrics = ck.metrics;
        if (!ck.pass) {
            rr.exit_code = kThresholdFail;
            rr.message = ck.why;
        }
    }

    if (!s.out_dir.empty()) {
        namespace fs = std::filesystem;
        try {
            fs::create_directories(s.out_dir);
            std::ofstream(s.out_dir + "/barcode.json") << barcode_to_json(rr.bc);
            std::ofstream(s.out_dir + "/prediction.json") << prediction_to_json(rr.prediction);
            nlohmann::ordered_json rep;
            rep["scenario"] = s.name.empty() ? s.input : s.name;
            rep["exit_code"] = rr.exit_code;
            rep["message"] = rr.message;
            rep["metrics"] = rr.metrics;
            {
                std::time_t t = std::time(nullptr);
                char buf[32];
                std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
                rep["generated_at"] = buf;
            }
            std::ofstream(s.out_dir + "/report.json") << rep.dump(2);
            std::ofstream plot(s.out_dir + "/plot.gp");
            plot << "# gnuplot stub: -h*log(lambda) against h per bar\n"
                    "set xlabel 'h'\nset ylabel '-h log lambda'\n";
            for (const auto& br : rr.blocks) {
                std::string csv = s.out_dir + "/spectrum_block" + std::to_string(br.block) + ".csv";
                std::ofstream(csv) << spectral_report_csv(br.fit, br.block);
                std::ofstream(s.out_dir + "/fit_block" + std::to_string(br.block) + ".json")
                    << fit_summary_to_json(br.fit);
                plot << "# plot '" << csv << "' using 1:(-$1*$4) with points\n";
            }
        } catch (const std::exception& e) {
            rr.exit_code = kIoError;
            rr.message = e.what();
        }
    }
    return rr;
}

}  // namespace wittenlab
