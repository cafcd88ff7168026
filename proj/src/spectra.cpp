#include "wittenlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wittenlab/jacobi_svd.hpp"
#include "wittenlab/lanczos.hpp"

namespace wittenlab {

namespace {

double gram_norm_estimate(const LinOp& gram, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(gram.n), y(gram.n);
    for (auto& v : x) v = gauss(rng);
    double lam = 0;
    for (int it = 0; it < 40; ++it) {
        gram.apply(x.data(), y.data());
        double ny = 0;
        for (double v : y) ny += v * v;
        ny = std::sqrt(ny);
        if (ny == 0) return 0;
        lam = ny;
        for (int i = 0; i < gram.n; ++i) x[i] = y[i] / ny;
    }
    return lam;
}

}  // namespace

SmallSvResult smallest_singular_values(const SparseMatrix& d, int k, const SmallSvOptions& opt) {
    int side_dim = std::min(d.rows(), d.cols());
    if (opt.side == GramSide::Columns) side_dim = d.cols();
    if (opt.side == GramSide::Rows) side_dim = d.rows();
    if (k > side_dim)
        throw std::invalid_argument("smallest_singular_values: k exceeds the Gram dimension");
    // structural zeros of the requested Gram beyond the min dimension
    int pad = side_dim - std::min(d.rows(), d.cols());
    k = std::max(0, k - pad);
    SmallSvResult out;
    bool dense = !opt.force_iterative && std::max(d.rows(), d.cols()) <= opt.dense_limit;
    if (dense) {
        Matrix a = d.to_dense();
        if (a.cols() > a.rows()) a = a.transposed();
        auto svd = jacobi_svd(a);
        out.sigma = svd.sigma;
        out.sigma_max = svd.sigma.empty() ? 0 : svd.sigma.back();
        out.dense_path = true;
        out.converged = svd.converged;
        out.iterations = svd.sweeps;
        out.accuracy_floor = 0;
        out.sigma.insert(out.sigma.begin(), pad, 0.0);
        return out;
    }
    // iterative: Lanczos on the smaller Gram side
    out.dense_path = false;
    bool use_right = d.cols() <= d.rows();  // d^T d when columns are fewer
    LinOp gram;
    gram.n = use_right ? d.cols() : d.rows();
    std::vector<double> tmp(use_right ? d.rows() : d.cols());
    if (use_right)
        gram.apply = [&d, &tmp](const double* x, double* y) {
            d.multiply(x, tmp.data());
            d.multiply_transpose(tmp.data(), y);
        };
    else
        gram.apply = [&d, &tmp](const double* x, double* y) {
            d.multiply_transpose(x, tmp.data());
            d.multiply(tmp.data(), y);
        };
    double gnorm = gram_norm_estimate(gram, opt.seed);
    LanczosOptions lopt;
    lopt.max_iter = opt.lanczos_max_iter;
    lopt.seed = opt.seed;
    auto lr = lanczos_smallest(gram, gnorm, k, lopt);
    for (double lam : lr.eigenvalues) out.sigma.push_back(std::sqrt(std::max(0.0, lam)));
    out.sigma_max = std::sqrt(gnorm);
    out.converged = lr.converged;
    out.iterations = lr.iterations;
    out.accuracy_floor = std::sqrt(2.3e-16 * gnorm);
    out.sigma.insert(out.sigma.begin(), pad, 0.0);
    return out;
}

double kernel_threshold(double sigma_max, double h, double crit_span, double eta_f,
                        double accuracy_floor) {
    double t = std::max(1e-12 * sigma_max, std::exp(-(2.0 * crit_span + 10.0 * eta_f) / h));
    return std::max(t, 10.0 * accuracy_floor);
}

double counting_threshold(double h, double eta_f) { return std::exp(-eta_f / (2.0 * h)); }

CountReport count_small_singular_values(const SmallSvResult& sv, double h, double crit_span,
                                        double eta_f) {
    CountReport rep;
    rep.t_kernel = kernel_threshold(sv.sigma_max, h, crit_span, eta_f, sv.accuracy_floor);
    rep.t_small = counting_threshold(h, eta_f);
    for (double s : sv.sigma) {
        if (s <= rep.t_kernel)
            ++rep.kernel;
        else if (s <= rep.t_small)
            ++rep.small_nonzero;
    }
    return rep;
}

namespace {

void affine_fit(const std::vector<double>& x, const std::vector<double>& y, double& a, double& b,
                double& max_resid) {
    int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    b = (n * sxy - sx * sy) / den;
    a = (sy - b * sx) / n;
    max_resid = 0;
    for (int i = 0; i < n; ++i) max_resid = std::max(max_resid, std::fabs(a + b * x[i] - y[i]));
}

}  // namespace

FitSummary match_and_fit(const std::vector<BlockObservation>& obs, int zero_count,
                         const std::vector<double>& rates_desc, const std::vector<int>& bar_ids) {
    FitSummary out;
    if (obs.size() < 3) {
        out.mismatch = "need at least 3 h values for a rate fit";
        return out;
    }
    int need = zero_count + static_cast<int>(rates_desc.size());
    for (const auto& o : obs) {
        if (static_cast<int>(o.sigma.size()) < need) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "count mismatch at h=%g: predicted %d small singular values, observed %zu",
                          o.h, need, o.sigma.size());
            out.mismatch = buf;
            return out;
        }
        for (size_t i = 1; i < o.sigma.size(); ++i)
            if (o.sigma[i] < o.sigma[i - 1]) {
                out.mismatch = "observed singular values not sorted";
                return out;
            }
    }
    for (size_t i = 1; i < rates_desc.size(); ++i)
        if (rates_desc[i] > rates_desc[i - 1] + 1e-12) {
            out.mismatch = "predicted rates not sorted descending";
            return out;
        }

    out.kernel_sigmas.resize(obs.size());
    for (size_t oi = 0; oi < obs.size(); ++oi)
        out.kernel_sigmas[oi].assign(obs[oi].sigma.begin(), obs[oi].sigma.begin() + zero_count);

    int cluster = -1;
    double prev_rate = -1;
    for (size_t ri = 0; ri < rates_desc.size(); ++ri) {
        MatchedRate mr;
        mr.rate_pred = rates_desc[ri];
        mr.bar = ri < bar_ids.size() ? bar_ids[ri] : -1;
        if (std::fabs(mr.rate_pred - prev_rate) > 1e-12) ++cluster;
        prev_rate = mr.rate_pred;
        mr.tie_cluster = cluster;
        std::vector<double> hs, ys, lx, ly;
        for (const auto& o : obs) {
            double sigma = o.sigma[zero_count + ri];
            double loglam = 2.0 * std::log(sigma);
            mr.h.push_back(o.h);
            mr.log_lambda.push_back(loglam);
            hs.push_back(o.h);
            ys.push_back(-o.h * loglam);
            lx.push_back(std::log(o.h));
            ly.push_back(loglam + mr.rate_pred / o.h);
        }
        affine_fit(hs, ys, mr.intercept, mr.slope, mr.max_fit_residual);
        double presid;
        affine_fit(lx, ly, mr.power_intercept, mr.power, presid);
        out.rates.push_back(std::move(mr));
    }
    out.ok = true;
    return out;
}

std::string spectral_report_csv(const FitSummary& fit, int degree) {
    std::ostringstream out;
    out << "h,degree,sigma,lambda_log,bar_id,predicted_rate,residual\n";
    char buf[256];
    // kernel entries first
    for (size_t oi = 0; oi < fit.kernel_sigmas.size(); ++oi) {
        double h = fit.rates.empty() ? 0.0 : fit.rates[0].h[oi];
        for (double s : fit.kernel_sigmas[oi]) {
            std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,kernel,inf,0\n", h, degree, s,
                          s > 0 ? 2 * std::log(s) : -kInf);
            out << buf;
        }
    }
    for (const auto& r : fit.rates) {
        for (size_t i = 0; i < r.h.size(); ++i) {
            double resid = -r.h[i] * r.log_lambda[i] - r.rate_pred;
            std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%d,%.17g,%.17g\n", r.h[i], degree,
                          std::exp(0.5 * r.log_lambda[i]), r.log_lambda[i], r.bar, r.rate_pred,
                          resid);
            out << buf;
        }
    }
    return out.str();
}

std::string fit_summary_to_json(const FitSummary& fit) {
    nlohmann::ordered_json j;
    j["ok"] = fit.ok;
    if (!fit.mismatch.empty()) j["mismatch"] = fit.mismatch;
    j["rates"] = nlohmann::ordered_json::array();
    for (const auto& r : fit.rates) {
        nlohmann::ordered_json jr;
        jr["bar"] = r.bar;
        jr["predicted_rate"] = r.rate_pred;
        jr["intercept"] = r.intercept;
        jr["slope"] = r.slope;
        jr["prefactor_power"] = r.power;
        jr["max_fit_residual"] = r.max_fit_residual;
        jr["tie_cluster"] = r.tie_cluster;
        j["rates"].push_back(jr);
    }
    return j.dump(2);
}

}  // namespace wittenlab
