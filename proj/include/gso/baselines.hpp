#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gso/graph.hpp"
#include "gso/stats.hpp"

namespace gso {

inline constexpr double lmf_default_z_threshold = 2.8;
inline constexpr double modified_z_factor = 0.6745;

struct BaselineResult {
    Vec fitted;
    Vec scores;  // |modified z-score| per node
    std::vector<char> flagged;
    std::vector<std::string> warnings;
};

// fitted[i] = median over the closed neighborhood {j : w_ij > 0} plus i itself.
inline Vec local_median_fit(const Graph& g, const Vec& y) {
    if (y.size() != g.n) throw std::invalid_argument("local_median_fit: signal length mismatch");
    Vec fitted(g.n);
    for (int i = 0; i < g.n; ++i) {
        std::vector<double> vals{y[i]};
        for (int j = 0; j < g.n; ++j)
            if (g.W(i, j) > 0.0) vals.push_back(y[j]);
        fitted[i] = median(std::move(vals));
    }
    return fitted;
}

// Modified z-scores 0.6745*(x - median)/MAD, flagging |score| > z_threshold.
// When MAD is zero (common when most residuals are exactly 0), the scale is
// recomputed from the entries not equal to the median; if that is still zero
// nothing is flagged.
inline BaselineResult mad_detect(const Vec& residuals, double z_threshold = lmf_default_z_threshold) {
    if (residuals.size() == 0) throw std::invalid_argument("mad_detect: empty input");
    if (!(z_threshold > 0.0)) throw std::invalid_argument("mad_detect: z_threshold must be > 0");
    BaselineResult out;
    out.scores = Vec::Zero(residuals.size());
    out.flagged.assign(static_cast<std::size_t>(residuals.size()), 0);

    const double med = median(residuals);
    double scale = mad(residuals);
    if (scale == 0.0) {
        std::vector<double> rest;
        for (Eigen::Index i = 0; i < residuals.size(); ++i)
            if (residuals[i] != med) rest.push_back(residuals[i]);
        if (rest.empty()) {
            out.warnings.push_back("all residuals identical; nothing flagged");
            return out;
        }
        scale = mad(Eigen::Map<const Vec>(rest.data(), static_cast<Eigen::Index>(rest.size())));
        if (scale == 0.0) {
            out.warnings.push_back(
                "residual MAD degenerate even among non-median entries; nothing flagged");
            return out;
        }
        out.warnings.push_back("residual MAD is zero; scale recomputed from non-median entries");
    }
    for (Eigen::Index i = 0; i < residuals.size(); ++i) {
        out.scores[i] = std::abs(modified_z_factor * (residuals[i] - med) / scale);
        out.flagged[static_cast<std::size_t>(i)] = out.scores[i] > z_threshold ? 1 : 0;
    }
    return out;
}

inline BaselineResult lmf_detect(const Graph& g, const Vec& y,
                                 double z_threshold = lmf_default_z_threshold) {
    const Vec fitted = local_median_fit(g, y);
    BaselineResult out = mad_detect(y - fitted, z_threshold);
    out.fitted = fitted;
    return out;
}

}  // namespace gso
