#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gso {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Even-length median is the midpoint of the two central order statistics.
inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty input");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

inline double median(const Vec& y) {
    return median(std::vector<double>(y.begin(), y.end()));
}

inline double mad(const Vec& y) {
    const double med = median(y);
    std::vector<double> dev(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) dev[static_cast<std::size_t>(i)] = std::abs(y[i] - med);
    return median(std::move(dev));
}

inline double sample_variance(const Vec& y) {
    if (y.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
    const double m = y.mean();
    return (y.array() - m).square().sum() / static_cast<double>(y.size() - 1);
}

inline double sample_sd(const Vec& y) { return std::sqrt(sample_variance(y)); }

}  // namespace gso
