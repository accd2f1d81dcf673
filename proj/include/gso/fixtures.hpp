#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gso/graph.hpp"
#include "gso/oracle.hpp"
#include "gso/sampler.hpp"
#include "gso/spectrum.hpp"

namespace gso {

// Small connected graphs with one injected large value, used to validate the
// Gibbs sampler against the exhaustive quadrature oracle.  ref_p holds the
// oracle probabilities recomputed on an 800-node-per-axis grid; ref_tau_delta
// is the resolved slab precision (MAD rule when tau_delta is unset).
struct GoldenFixture {
    std::string name;
    int n = 0;
    std::vector<std::tuple<int, int, double>> edges;
    Vec y;
    std::optional<double> tau_delta;
    double ref_tau_delta = 0.0;
    Vec ref_p;
};

namespace detail {

inline Vec make_vec(std::initializer_list<double> vals) {
    Vec v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

}  // namespace detail

inline const std::vector<GoldenFixture>& golden_fixtures() {
    static const std::vector<GoldenFixture> fixtures = [] {
        std::vector<GoldenFixture> fx;
        fx.push_back({"path3",
                      3,
                      {{0, 1, 1.0}, {1, 2, 1.0}},
                      detail::make_vec({0.2, -0.1, 5.0}),
                      std::nullopt,
                      2.5274245728865137,
                      detail::make_vec({0.099820043914, 0.099954903664, 0.100217134111})});
        fx.push_back({"path4",
                      4,
                      {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}},
                      detail::make_vec({0.1, 0.3, -0.2, 4.0}),
                      std::nullopt,
                      3.6394913849565809,
                      detail::make_vec(
                          {0.099327506973, 0.098984392630, 0.100311456270, 0.101541371394})});
        fx.push_back({"cycle4",
                      4,
                      {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}},
                      detail::make_vec({0.05, 0.2, -4.5, 0.1}),
                      std::nullopt,
                      40.438793166184219,
                      detail::make_vec(
                          {0.099952434248, 0.099977148464, 0.100107548515, 0.099973757681})});
        // Wide-slab variants: tau_delta small enough that the slab can absorb
        // the spike, so the inclusion probabilities move well away from the
        // prior and exercise the s-update nontrivially.
        fx.push_back({"path4-wide-slab",
                      4,
                      {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}},
                      detail::make_vec({0.1, 0.3, -0.2, 4.0}),
                      0.05,
                      0.05,
                      detail::make_vec(
                          {0.076122240320, 0.071942946676, 0.080030990477, 0.147778996144})});
        fx.push_back({"cycle4-wide-slab",
                      4,
                      {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}},
                      detail::make_vec({0.05, 0.2, -4.5, 0.1}),
                      0.05,
                      0.05,
                      detail::make_vec(
                          {0.075258801871, 0.077874032463, 0.192138287471, 0.077402110162})});
        return fx;
    }();
    return fixtures;
}

struct FixtureEval {
    Vec oracle_p;
    Vec gibbs_p;
    double max_abs_diff = 0.0;       // gibbs vs oracle
    double max_ref_drift = 0.0;      // oracle vs frozen reference
    double resolved_tau_delta = 0.0;
};

inline FixtureEval evaluate_fixture(const GoldenFixture& fix, int n_iter, int n_burn,
                                    std::uint64_t seed) {
    const Graph g = build_graph(fix.n, fix.edges);
    const LaplacianSpectrum sp = spectrum(g);
    ModelConfig cfg;
    cfg.tau_delta = fix.tau_delta;
    cfg.n_iter = n_iter;
    cfg.n_burn = n_burn;
    cfg.seed = seed;

    FixtureEval ev;
    ev.resolved_tau_delta = fix.tau_delta ? *fix.tau_delta : compute_tau_delta(fix.y);
    ev.oracle_p = exact_outlier_prob(g, sp, fix.y, cfg, make_quad_grid());
    const PosteriorSummary post = run_chain(cfg, g, sp, fix.y);
    ev.gibbs_p = post.p_outlier;
    ev.max_abs_diff = (ev.gibbs_p - ev.oracle_p).cwiseAbs().maxCoeff();
    ev.max_ref_drift = (ev.oracle_p - fix.ref_p).cwiseAbs().maxCoeff();
    return ev;
}

}  // namespace gso
