#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gso/rng.hpp"
#include "gso/spectrum.hpp"
#include "gso/stats.hpp"

namespace gso {

inline constexpr double mad_normal_k = 1.482602218505602;  // 1 / Phi^{-1}(3/4)

// Density proportional to x^{shape-1} e^{-rate x}; the default (-1/2, 0) is the
// improper x^{-3/2} prior, under which the conditional updates reduce to
// Gamma((N-1)/2, .) for tau and Gamma((r-1)/2, .) for gamma.
struct GammaPrior {
    double shape = -0.5;
    double rate = 0.0;
};

struct ModelConfig {
    double alpha = 1.0;
    double beta = 9.0;
    std::optional<double> tau_delta;  // slab precision; MAD-calibrated from y when unset
    int n_iter = 3000;
    int n_burn = 1000;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    GammaPrior tau_prior{};
    GammaPrior gamma_prior{};
    double const_mode_prec = 0.0;  // prior precision of the zero-eigenvalue coordinate; 0 = flat
};

inline void validate(const ModelConfig& cfg) {
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("ModelConfig: alpha must be > 0");
    if (!(cfg.beta > 0.0)) throw std::invalid_argument("ModelConfig: beta must be > 0");
    if (cfg.tau_delta && !(*cfg.tau_delta > 0.0))
        throw std::invalid_argument("ModelConfig: tau_delta must be > 0");
    if (cfg.n_iter < 1) throw std::invalid_argument("ModelConfig: n_iter must be >= 1");
    if (cfg.n_burn < 0 || cfg.n_burn >= cfg.n_iter)
        throw std::invalid_argument("ModelConfig: need 0 <= n_burn < n_iter");
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
        throw std::invalid_argument("ModelConfig: threshold must be in (0, 1)");
    if (cfg.const_mode_prec < 0.0)
        throw std::invalid_argument("ModelConfig: const_mode_prec must be >= 0");
}

struct ChainState {
    Vec f;
    Eigen::VectorXi s;
    Vec delta;
    Vec pi;
    double tau = 1.0;
    double gamma = 1.0;
};

struct PosteriorSummary {
    Vec p_outlier;
    std::vector<char> classified;
    Vec f_mean;
    double tau_mean = 0.0;
    double gamma_mean = 0.0;
    int n_kept = 0;
    double tau_delta = 0.0;
    std::vector<std::string> warnings;
};

inline double compute_tau_delta(const Vec& y) {
    const double m = mad(y);
    if (m == 0.0)
        throw std::invalid_argument(
            "compute_tau_delta: MAD(y) is zero (more than half of the values coincide); "
            "supply tau_delta explicitly");
    const double k = mad_normal_k;
    return 1.0 / (2.0 * k * k * m * m);
}

inline double stable_sigmoid(double logit) {
    if (logit >= 0.0) return 1.0 / (1.0 + std::exp(-logit));
    const double e = std::exp(logit);
    return e / (1.0 + e);
}

// Step 1: all n spectral coordinates drawn independently; the zero-eigenvalue
// coordinate gets prior precision const_mode_prec (0 = flat).
inline void sample_f(ChainState& st, const LaplacianSpectrum& sp, const Vec& y, Rng& rng,
                     double const_mode_prec = 0.0) {
    const Eigen::Index n = y.size();
    Vec y_eff(n);
    for (Eigen::Index i = 0; i < n; ++i) y_eff[i] = y[i] - st.s[i] * st.delta[i];
    const Vec yt = gft(sp, y_eff);
    Vec ft(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double lam = sp.eigenvalues[j];
        const double prec = st.tau + (lam == 0.0 ? const_mode_prec : st.gamma * lam);
        const double mean = st.tau * yt[j] / prec;
        ft[j] = mean + draw_normal(rng) / std::sqrt(prec);
    }
    st.f = igft(sp, ft);
}

// Step 2a: indicators conditioned on the current delta.
inline void sample_s(ChainState& st, const Vec& y, Rng& rng) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double r = y[i] - st.f[i];
        const double d = st.delta[i];
        const double logit =
            std::log(st.pi[i]) - std::log1p(-st.pi[i]) + st.tau * d * r - 0.5 * st.tau * d * d;
        st.s[i] = draw_uniform(rng) < stable_sigmoid(logit) ? 1 : 0;
    }
}

// Step 2b: slab magnitudes given the freshly updated indicators.
inline void sample_delta(ChainState& st, const Vec& y, double tau_delta, Rng& rng) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double r = y[i] - st.f[i];
        const double prec = tau_delta + st.s[i] * st.tau;
        const double mean = st.s[i] * st.tau * r / prec;
        st.delta[i] = mean + draw_normal(rng) / std::sqrt(prec);
    }
}

// Step 3: conjugate Beta(alpha + s_i, beta + 1 - s_i).
inline void sample_pi(ChainState& st, const ModelConfig& cfg, Rng& rng) {
    for (Eigen::Index i = 0; i < st.pi.size(); ++i)
        st.pi[i] = draw_beta(rng, cfg.alpha + st.s[i], cfg.beta + 1 - st.s[i]);
}

// Keeps conditional rates inside [1e-300, 1e300]; the cap turns the rare deep
// excursion of the improper-prior chain (residuals whose square overflows) into
// a reflecting barrier instead of a NaN cascade.
inline void clamp_rate(double& rate, bool* floored, bool* capped) {
    if (rate < 1e-300) {
        rate = 1e-300;
        if (floored) *floored = true;
    } else if (!(rate <= 1e300)) {
        rate = 1e300;
        if (capped) *capped = true;
    }
}

// Step 4a: with the default improper prior, Gamma((N-1)/2, ||y-f-s.delta||^2/2).
inline void sample_tau(ChainState& st, const Vec& y, Rng& rng, GammaPrior prior = {},
                       bool* rate_floored = nullptr, bool* rate_capped = nullptr) {
    double ss = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double r = y[i] - st.f[i] - st.s[i] * st.delta[i];
        ss += r * r;
    }
    double rate = prior.rate + 0.5 * ss;
    clamp_rate(rate, rate_floored, rate_capped);
    st.tau = draw_gamma(rng, prior.shape + static_cast<double>(y.size()) / 2.0, rate);
}

// Step 4b: with the default improper prior, Gamma((r-1)/2, f'Lf/2).
inline void sample_gamma(ChainState& st, const LaplacianSpectrum& sp, Rng& rng,
                         GammaPrior prior = {}, bool* rate_floored = nullptr,
                         bool* rate_capped = nullptr) {
    const Vec ft = gft(sp, st.f);
    double quad = 0.0;
    for (Eigen::Index j = 0; j < ft.size(); ++j) quad += sp.eigenvalues[j] * ft[j] * ft[j];
    double rate = prior.rate + 0.5 * quad;
    clamp_rate(rate, rate_floored, rate_capped);
    st.gamma = draw_gamma(rng, prior.shape + static_cast<double>(sp.rank) / 2.0, rate);
}

struct SweepDiagnostics {
    bool tau_rate_floored = false;
    bool gamma_rate_floored = false;
    bool tau_rate_capped = false;
    bool gamma_rate_capped = false;
};

inline void gibbs_sweep(ChainState& st, const LaplacianSpectrum& sp, const Vec& y,
                        const ModelConfig& cfg, double tau_delta, Rng& rng,
                        SweepDiagnostics* diag = nullptr) {
    sample_f(st, sp, y, rng, cfg.const_mode_prec);
    sample_s(st, y, rng);
    sample_delta(st, y, tau_delta, rng);
    sample_pi(st, cfg, rng);
    bool tf = false, gf = false, tc = false, gc = false;
    sample_tau(st, y, rng, cfg.tau_prior, &tf, &tc);
    sample_gamma(st, sp, rng, cfg.gamma_prior, &gf, &gc);
    if (diag) {
        diag->tau_rate_floored |= tf;
        diag->gamma_rate_floored |= gf;
        diag->tau_rate_capped |= tc;
        diag->gamma_rate_capped |= gc;
    }
}

inline ChainState initial_state(const ModelConfig& cfg, const Vec& y) {
    const double var_y = sample_variance(y);
    if (var_y == 0.0)
        throw std::invalid_argument("initial_state: signal is constant (zero variance)");
    ChainState st;
    st.f = y;
    st.s = Eigen::VectorXi::Zero(y.size());
    st.delta = Vec::Zero(y.size());
    st.pi = Vec::Constant(y.size(), cfg.alpha / (cfg.alpha + cfg.beta));
    st.tau = 1.0 / var_y;
    st.gamma = 1.0;
    return st;
}

inline PosteriorSummary run_chain(const ModelConfig& cfg, const Graph& g,
                                  const LaplacianSpectrum& sp, const Vec& y,
                                  std::optional<ChainState> init = std::nullopt) {
    validate(cfg);
    if (g.n < 3) throw std::invalid_argument("run_chain: need at least 3 nodes");
    if (!is_connected(g)) throw std::invalid_argument("run_chain: graph must be connected");
    if (y.size() != g.n || sp.eigenvalues.size() != g.n)
        throw std::invalid_argument("run_chain: dimension mismatch");
    const double tau_delta = cfg.tau_delta ? *cfg.tau_delta : compute_tau_delta(y);

    ChainState st = init ? *init : initial_state(cfg, y);
    Rng rng = make_rng(cfg.seed);
    SweepDiagnostics diag;

    const int n = g.n;
    Vec s_count = Vec::Zero(n), f_sum = Vec::Zero(n);
    double tau_sum = 0.0, gamma_sum = 0.0;
    for (int t = 0; t < cfg.n_iter; ++t) {
        gibbs_sweep(st, sp, y, cfg, tau_delta, rng, &diag);
        if (t >= cfg.n_burn) {
            for (int i = 0; i < n; ++i) s_count[i] += st.s[i];
            f_sum += st.f;
            tau_sum += st.tau;
            gamma_sum += st.gamma;
        }
    }

    PosteriorSummary out;
    out.n_kept = cfg.n_iter - cfg.n_burn;
    out.p_outlier = s_count / out.n_kept;
    out.classified.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.classified[static_cast<std::size_t>(i)] = out.p_outlier[i] > cfg.threshold ? 1 : 0;
    out.f_mean = f_sum / out.n_kept;
    out.tau_mean = tau_sum / out.n_kept;
    out.gamma_mean = gamma_sum / out.n_kept;
    out.tau_delta = tau_delta;
    if (diag.tau_rate_floored)
        out.warnings.push_back("degenerate residual: tau conditional rate floored at 1e-300");
    if (diag.gamma_rate_floored)
        out.warnings.push_back("degenerate smooth component: gamma conditional rate floored at 1e-300");
    if (diag.tau_rate_capped)
        out.warnings.push_back("overflowing residual: tau conditional rate capped at 1e300");
    if (diag.gamma_rate_capped)
        out.warnings.push_back("overflowing smooth component: gamma conditional rate capped at 1e300");
    return out;
}

}  // namespace gso
