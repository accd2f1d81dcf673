#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gso/rng.hpp"
#include "gso/spectrum.hpp"
#include "gso/stats.hpp"

namespace gso {

struct SynthConfig {
    double snr = 2.0;
    int n_outliers = 5;
    double ridge = 0.1;
};

inline void validate(const SynthConfig& cfg, int n) {
    if (!(cfg.snr > 0.0)) throw std::invalid_argument("SynthConfig: snr must be > 0");
    if (cfg.n_outliers < 0 || cfg.n_outliers > n)
        throw std::invalid_argument("SynthConfig: n_outliers must be in [0, n]");
    if (!(cfg.ridge > 0.0)) throw std::invalid_argument("SynthConfig: ridge must be > 0");
}

struct GroundTruth {
    Vec f;                           // smooth component
    Vec y;                           // observed signal
    std::vector<char> outlier_mask;  // one entry per node
    Vec outlier_values;              // signed injected value, 0 where mask is false
};

inline Vec smooth_signal(const LaplacianSpectrum& sp, double ridge, Rng& rng) {
    if (!(ridge > 0.0)) throw std::invalid_argument("smooth_signal: ridge must be > 0");
    const Eigen::Index n = sp.eigenvalues.size();
    Vec z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = draw_normal(rng);
    const Vec scale = (sp.eigenvalues.array() + ridge).rsqrt();
    return sp.U * (scale.array() * (sp.U.transpose() * z).array()).matrix();
}

inline Vec add_noise(const Vec& f, double snr, Rng& rng) {
    if (!(snr > 0.0)) throw std::invalid_argument("add_noise: snr must be > 0");
    const double var_f = sample_variance(f);
    if (var_f == 0.0) throw std::invalid_argument("add_noise: constant signal has zero variance");
    const double sd = std::sqrt(var_f / snr);
    Vec y = f;
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += draw_normal(rng, 0.0, sd);
    return y;
}

inline GroundTruth inject_outliers(const Vec& y, const Vec& f, int m, Rng& rng) {
    const int n = static_cast<int>(y.size());
    if (y.size() != f.size()) throw std::invalid_argument("inject_outliers: length mismatch");
    if (m < 0 || m > n) throw std::invalid_argument("inject_outliers: m must be in [0, n]");
    GroundTruth gt;
    gt.f = f;
    gt.y = y;
    gt.outlier_mask.assign(static_cast<std::size_t>(n), 0);
    gt.outlier_values = Vec::Zero(n);
    if (m == 0) return gt;
    const double loc = f.cwiseAbs().maxCoeff();
    const double scale = sample_sd(f) / 2.0;
    // partial Fisher-Yates: uniform without replacement
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (int t = 0; t < m; ++t) {
        std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(draw_int(rng, t, n - 1))]);
        const int node = idx[static_cast<std::size_t>(t)];
        const double v = draw_normal(rng, loc, scale);
        const double sign = draw_uniform(rng) < 0.5 ? 1.0 : -1.0;
        gt.outlier_mask[static_cast<std::size_t>(node)] = 1;
        gt.outlier_values[node] = sign * v;
        gt.y[node] += sign * v;
    }
    return gt;
}

}  // namespace gso
