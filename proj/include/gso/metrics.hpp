#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gso/stats.hpp"

namespace gso {

struct Prf1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Zero-denominator conventions: precision/recall/F1 are 0 rather than
// undefined, so trial averages always exist.
inline Prf1 prf1(const std::vector<char>& truth, const std::vector<char>& predicted) {
    if (truth.size() != predicted.size()) throw std::invalid_argument("prf1: length mismatch");
    int tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i] && truth[i]) ++tp;
        if (predicted[i] && !truth[i]) ++fp;
        if (!predicted[i] && truth[i]) ++fn;
    }
    Prf1 out;
    out.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    out.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    out.f1 = out.precision + out.recall > 0.0
                 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

// Mann-Whitney statistic via midranks; ties count one half.
inline double auc(const std::vector<char>& truth, const Vec& scores) {
    if (static_cast<Eigen::Index>(truth.size()) != scores.size())
        throw std::invalid_argument("auc: length mismatch");
    const std::size_t n = truth.size();
    std::size_t n_pos = 0;
    for (char t : truth) n_pos += t ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("auc: need at least one positive and one negative");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[static_cast<Eigen::Index>(a)] < scores[static_cast<Eigen::Index>(b)]; });

    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[static_cast<Eigen::Index>(order[j + 1])] ==
                                scores[static_cast<Eigen::Index>(order[i])])
            ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k)
            if (truth[order[k]]) rank_sum_pos += midrank;
        i = j + 1;
    }
    const double u = rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace gso
