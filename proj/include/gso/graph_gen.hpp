#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gso/graph.hpp"
#include "gso/rng.hpp"

namespace gso {

enum class GraphKind { erdos_renyi, geometric, knn };

struct GenSpec {
    GraphKind kind = GraphKind::erdos_renyi;
    int n = 0;
    double p = 0.0;       // ER edge probability
    double radius = 0.0;  // geometric distance threshold
    int k = 0;            // knn neighbor count
    int max_attempts = 1000;
};

inline void validate(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("GenSpec: n must be >= 1");
    if (spec.max_attempts < 1) throw std::invalid_argument("GenSpec: max_attempts must be >= 1");
    switch (spec.kind) {
        case GraphKind::erdos_renyi:
            if (!(spec.p > 0.0 && spec.p <= 1.0))
                throw std::invalid_argument("GenSpec: p must be in (0, 1]");
            break;
        case GraphKind::geometric:
            if (!(spec.radius > 0.0)) throw std::invalid_argument("GenSpec: radius must be > 0");
            break;
        case GraphKind::knn:
            if (spec.k < 1 || spec.k >= spec.n)
                throw std::invalid_argument("GenSpec: k must satisfy 1 <= k < n");
            break;
    }
}

inline Graph gen_erdos_renyi(const GenSpec& spec, Rng& rng) {
    validate(spec);
    if (spec.kind != GraphKind::erdos_renyi)
        throw std::invalid_argument("gen_erdos_renyi: spec.kind mismatch");
    for (int attempt = 1; attempt <= spec.max_attempts; ++attempt) {
        std::vector<std::tuple<int, int, double>> edges;
        for (int i = 0; i < spec.n; ++i)
            for (int j = i + 1; j < spec.n; ++j)
                if (draw_uniform(rng) < spec.p) edges.emplace_back(i, j, 1.0);
        Graph g = build_graph(spec.n, edges);
        g.gen_attempts = attempt;
        if (is_connected(g)) return g;
    }
    throw std::runtime_error("gen_erdos_renyi: no connected draw within " +
                             std::to_string(spec.max_attempts) + " attempts");
}

namespace detail {

// Shared by the geometric and knn generators: Gaussian kernel weights
// w_ij = exp(-d_ij^2 / dbar^2) with dbar the mean length of the included edges.
inline Graph kernel_weighted_graph(const Mat& pts,
                                   const std::vector<std::pair<int, int>>& edge_pairs) {
    const int n = static_cast<int>(pts.rows());
    double dbar = 0.0;
    std::vector<double> dist(edge_pairs.size());
    for (std::size_t e = 0; e < edge_pairs.size(); ++e) {
        const auto [i, j] = edge_pairs[e];
        dist[e] = (pts.row(i) - pts.row(j)).norm();
        dbar += dist[e];
    }
    dbar /= static_cast<double>(edge_pairs.size());
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(edge_pairs.size());
    for (std::size_t e = 0; e < edge_pairs.size(); ++e)
        edges.emplace_back(edge_pairs[e].first, edge_pairs[e].second,
                           std::exp(-dist[e] * dist[e] / (dbar * dbar)));
    Graph g = build_graph(n, edges);
    g.coords = pts;
    return g;
}

inline Mat uniform_points(int n, Rng& rng) {
    Mat pts(n, 2);
    for (int i = 0; i < n; ++i) {
        pts(i, 0) = draw_uniform(rng);
        pts(i, 1) = draw_uniform(rng);
    }
    return pts;
}

}  // namespace detail

inline Graph gen_geometric(const GenSpec& spec, Rng& rng) {
    validate(spec);
    if (spec.kind != GraphKind::geometric)
        throw std::invalid_argument("gen_geometric: spec.kind mismatch");
    for (int attempt = 1; attempt <= spec.max_attempts; ++attempt) {
        const Mat pts = detail::uniform_points(spec.n, rng);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < spec.n; ++i)
            for (int j = i + 1; j < spec.n; ++j)
                if ((pts.row(i) - pts.row(j)).norm() < spec.radius) pairs.emplace_back(i, j);
        if (pairs.empty()) continue;  // dbar undefined; regenerate
        Graph g = detail::kernel_weighted_graph(pts, pairs);
        g.gen_attempts = attempt;
        if (is_connected(g)) return g;
    }
    throw std::runtime_error("gen_geometric: no connected draw within " +
                             std::to_string(spec.max_attempts) + " attempts");
}

inline Graph gen_knn(const Mat& coords, int k) {
    const int n = static_cast<int>(coords.rows());
    if (n < 2) throw std::invalid_argument("gen_knn: need at least 2 points");
    if (k < 1 || k >= n) throw std::invalid_argument("gen_knn: k must satisfy 1 <= k < n");
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<char>> picked(static_cast<std::size_t>(n),
                                          std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> cand;
        cand.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) cand.emplace_back((coords.row(i) - coords.row(j)).norm(), j);
        // ties broken by lower index
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        for (int t = 0; t < k; ++t) picked[static_cast<std::size_t>(i)][static_cast<std::size_t>(cand[static_cast<std::size_t>(t)].second)] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (picked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ||
                picked[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                pairs.emplace_back(i, j);
    return detail::kernel_weighted_graph(coords, pairs);
}

}  // namespace gso
