#pragma once

#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gso/stats.hpp"

namespace gso {

struct Edge {
    int i, j;  // canonical order i < j
    double w;
};

struct Graph {
    int n = 0;
    Mat W;                      // symmetric, zero diagonal, entries >= 0
    std::vector<Edge> edges;    // one entry per undirected edge
    std::optional<Mat> coords;  // n x 2 points on the unit square, when positional
    int gen_attempts = 0;       // generator resampling count, 0 for hand-built graphs
};

inline Graph build_graph(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    if (n < 1) throw std::invalid_argument("build_graph: node count must be >= 1");
    Graph g;
    g.n = n;
    g.W = Mat::Zero(n, n);
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j, w] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw std::invalid_argument("build_graph: edge index out of range: (" +
                                        std::to_string(i) + ", " + std::to_string(j) + ")");
        if (i == j)
            throw std::invalid_argument("build_graph: self-loop at node " + std::to_string(i));
        if (w <= 0.0)
            throw std::invalid_argument("build_graph: non-positive weight on edge (" +
                                        std::to_string(i) + ", " + std::to_string(j) + ")");
        const auto key = std::minmax(i, j);
        if (!seen.insert(key).second)
            throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(i) +
                                        ", " + std::to_string(j) + ")");
        g.W(i, j) = w;
        g.W(j, i) = w;
        g.edges.push_back({key.first, key.second, w});
    }
    return g;
}

inline Vec degrees(const Graph& g) { return g.W.rowwise().sum(); }

inline Mat laplacian(const Graph& g) {
    Mat L = -g.W;
    L.diagonal() = degrees(g);
    return L;
}

inline double quadratic_form(const Graph& g, const Vec& y) {
    if (y.size() != g.n) throw std::invalid_argument("quadratic_form: signal length mismatch");
    double q = 0.0;
    for (const Edge& e : g.edges) {
        const double d = y[e.i] - y[e.j];
        q += e.w * d * d;
    }
    return q;
}

inline bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v = 0; v < g.n; ++v) {
            if (g.W(u, v) > 0.0 && !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    return count == g.n;
}

}  // namespace gso
