#include "wittenlab/arrhenius.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace wittenlab {

EndpointClassification classify(const BarCode& bc, const LevelWindow& w,
                                const CriticalLevels& levels) {
    if ((w.finite_a() && levels.is_critical(w.a)) || (w.finite_b() && levels.is_critical(w.b)))
        throw std::invalid_argument("classify: window endpoint is a critical value");
    EndpointClassification cls;
    cls.window = w;
    cls.degree.resize(bc.max_degree() + 2);
    for (int i = 0; i < (int)bc.bars.size(); ++i) {
        const Bar& b = bc.bars[i];
        bool birth_in = w.contains(b.birth);
        bool death_in = b.finite() && w.contains(b.death);
        if (birth_in && death_in) {
            cls.degree[b.degree].x.push_back({i, b.birth});
            cls.degree[b.degree + 1].y.push_back({i, b.death});
        } else if (birth_in) {
            cls.degree[b.degree].z.push_back({i, b.birth});
        } else if (death_in) {
            cls.degree[b.degree + 1].z.push_back({i, b.death});
        }
    }
    return cls;
}

SpectralPrediction predict_window_spectrum(const EndpointClassification& cls, const BarCode& bc,
                                           const CriticalLevels& levels) {
    SpectralPrediction pred;
    pred.window = cls.window;
    pred.eta_f = levels.eta_f.value_or(0.0);
    pred.degree.resize(cls.degree.size());
    for (int p = 0; p < (int)cls.degree.size(); ++p) {
        auto& out = pred.degree[p];
        out.zero_multiplicity = cls.count_z(p);
        for (const auto& e : cls.degree[p].x)
            out.rates.push_back({e.bar, 2.0 * bc.bars[e.bar].length(), true});
        for (const auto& e : cls.degree[p].y)
            out.rates.push_back({e.bar, 2.0 * bc.bars[e.bar].length(), false});
        std::sort(out.rates.begin(), out.rates.end(),
                  [](const auto& a, const auto& b) { return a.rate > b.rate; });
    }
    return pred;
}

RoughBounds rough_bounds(const SpectralPrediction& pred, const CriticalLevels& levels, double h) {
    if (!(h > 0)) throw std::invalid_argument("rough_bounds: h must be positive");
    RoughBounds rb;
    bool any = false;
    for (const auto& d : pred.degree) any = any || !d.rates.empty();
    if (!any) return rb;
    rb.empty = false;
    double eta = levels.eta_f.value_or(0.0);
    double lo = std::max(pred.window.a, levels.levels.front() - eta);
    double hi = std::min(pred.window.b, levels.levels.back() + eta);
    double span = hi - lo;
    rb.log_R = -2.0 * eta / h;
    rb.log_r = -2.0 * (span + eta) / h;
    rb.R = std::exp(rb.log_R);
    rb.r = std::exp(rb.log_r);
    return rb;
}

std::string prediction_to_json(const SpectralPrediction& p) {
    nlohmann::ordered_json j;
    j["window"]["a"] = p.window.finite_a() ? nlohmann::ordered_json(p.window.a)
                                           : nlohmann::ordered_json("-inf");
    j["window"]["b"] = p.window.finite_b() ? nlohmann::ordered_json(p.window.b)
                                           : nlohmann::ordered_json("inf");
    j["eta_f"] = p.eta_f;
    j["degrees"] = nlohmann::ordered_json::array();
    for (int deg = 0; deg < (int)p.degree.size(); ++deg) {
        nlohmann::ordered_json jd;
        jd["p"] = deg;
        jd["zero_multiplicity"] = p.degree[deg].zero_multiplicity;
        jd["rates"] = nlohmann::ordered_json::array();
        for (const auto& r : p.degree[deg].rates) {
            nlohmann::ordered_json jr;
            jr["bar"] = r.bar;
            jr["rate"] = r.rate;
            jr["side"] = r.from_x ? "x" : "y";
            jd["rates"].push_back(jr);
        }
        j["degrees"].push_back(jd);
    }
    return j.dump(2);
}

}  // namespace wittenlab
