#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gso/fixtures.hpp"
#include "gso/oracle.hpp"

using namespace gso;

namespace {
Graph path(int n) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
    return build_graph(n, edges);
}
}  // namespace

TEST_CASE("log-spaced trapezoid grid integrates a Gamma density") {
    const QuadGrid grid = make_quad_grid();
    REQUIRE(grid.tau_nodes.size() == 200);
    CHECK(grid.tau_nodes[0] == Catch::Approx(1e-4).epsilon(1e-12));
    CHECK(grid.tau_nodes[199] == Catch::Approx(1e4).epsilon(1e-12));
    CHECK(grid.tau_weights.minCoeff() > 0.0);
    double integral = 0.0;
    for (Eigen::Index k = 0; k < grid.tau_nodes.size(); ++k)
        integral += grid.tau_weights[k] * grid.tau_nodes[k] * std::exp(-grid.tau_nodes[k]);
    CHECK(integral == Catch::Approx(1.0).margin(1e-3));  // Gamma(2) = 1
}

TEST_CASE("log_spaced_axis input validation") {
    Vec nodes, weights;
    CHECK_THROWS_AS(log_spaced_axis(0.0, 1.0, 10, nodes, weights), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_axis(2.0, 1.0, 10, nodes, weights), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_axis(1.0, 2.0, 1, nodes, weights), std::invalid_argument);
}

TEST_CASE("exact_outlier_prob guards its domain") {
    ModelConfig cfg;
    cfg.tau_delta = 1.0;
    const QuadGrid grid = make_quad_grid();
    const Graph p2 = path(2);
    Vec y2(2);
    y2 << 0.1, 1.0;
    CHECK_THROWS_AS(exact_outlier_prob(p2, spectrum(p2), y2, cfg, grid), std::invalid_argument);
    const Graph p7 = path(7);
    Vec y7 = Vec::LinSpaced(7, 0.0, 1.0);
    CHECK_THROWS_AS(exact_outlier_prob(p7, spectrum(p7), y7, cfg, grid), std::invalid_argument);
    const Graph split = build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    Vec y4(4);
    y4 << 0.1, 0.2, 0.3, 4.0;
    CHECK_THROWS_AS(exact_outlier_prob(split, spectrum(split), y4, cfg, grid),
                    std::invalid_argument);
    const QuadGrid coarse = make_quad_grid(1e-4, 1e4, 100, 200);
    const Graph p3 = path(3);
    Vec y3(3);
    y3 << 0.2, -0.1, 5.0;
    CHECK_THROWS_AS(exact_outlier_prob(p3, spectrum(p3), y3, cfg, coarse), std::invalid_argument);
}

TEST_CASE("a rigid slab pins every node at the prior inclusion rate") {
    const Graph g = path(3);
    Vec y(3);
    y << 0.2, -0.1, 5.0;
    ModelConfig cfg;
    cfg.tau_delta = 1e8;  // slab cannot absorb anything; likelihood ignores s
    const Vec p = exact_outlier_prob(g, spectrum(g), y, cfg, make_quad_grid());
    for (int i = 0; i < 3; ++i) CHECK(p[i] == Catch::Approx(0.1).margin(0.01));
}

TEST_CASE("oracle respects graph automorphisms") {
    const Graph g = path(3);
    Vec y(3);
    y << 0.7, -0.3, 0.7;
    ModelConfig cfg;
    cfg.tau_delta = 1.0;
    const Vec p = exact_outlier_prob(g, spectrum(g), y, cfg, make_quad_grid());
    CHECK(std::abs(p[0] - p[2]) < 1e-10);
}

TEST_CASE("zero entries are perturbed with a warning") {
    const Graph g = path(3);
    Vec y(3);
    y << 0.0, 0.3, -4.0;
    ModelConfig cfg;
    cfg.tau_delta = 1.0;
    std::vector<std::string> warnings;
    const Vec p = exact_outlier_prob(g, spectrum(g), y, cfg, make_quad_grid(), &warnings);
    REQUIRE(!warnings.empty());
    CHECK(warnings[0].find("perturbed") != std::string::npos);
    for (int i = 0; i < 3; ++i) {
        CHECK(p[i] >= 0.0);
        CHECK(p[i] <= 1.0);
    }
}

TEST_CASE("oracle reproduces the frozen fixture references") {
    for (const GoldenFixture& fix : golden_fixtures()) {
        INFO("fixture " << fix.name);
        const Graph g = build_graph(fix.n, fix.edges);
        ModelConfig cfg;
        cfg.tau_delta = fix.tau_delta;
        if (!fix.tau_delta)
            CHECK(compute_tau_delta(fix.y) == Catch::Approx(fix.ref_tau_delta).epsilon(1e-12));
        const Vec p = exact_outlier_prob(g, spectrum(g), fix.y, cfg, make_quad_grid());
        CHECK((p - fix.ref_p).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("sampler tracks the oracle on a contrastive fixture") {
    const GoldenFixture& fix = golden_fixtures()[3];  // path4-wide-slab
    REQUIRE(fix.name == "path4-wide-slab");
    const FixtureEval ev = evaluate_fixture(fix, 12000, 2000, 31);
    CHECK(ev.max_abs_diff < 0.04);
    CHECK(ev.max_ref_drift < 1e-6);
}
