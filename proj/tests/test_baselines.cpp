#include <catch2/catch_amalgamated.hpp>

#include "gso/baselines.hpp"
#include "gso/rng.hpp"

using namespace gso;

namespace {
Graph path(int n) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
    return build_graph(n, edges);
}
}  // namespace

TEST_CASE("local_median_fit uses the closed neighborhood") {
    const Graph g = path(5);
    Vec y(5);
    y << 0.0, 0.0, 10.0, 0.0, 0.0;
    const Vec fitted = local_median_fit(g, y);
    CHECK(fitted[2] == 0.0);  // median{0, 10, 0}
    CHECK(fitted.isZero());
    Vec bad(3);
    CHECK_THROWS_AS(local_median_fit(g, bad), std::invalid_argument);
}

TEST_CASE("an isolated spike among exact zeros degenerates the scale") {
    // residuals (0,0,10,0,0): MAD is 0 and the non-median entries {10} have no
    // spread either, so nothing can be standardized and nothing is flagged
    Vec r(5);
    r << 0.0, 0.0, 10.0, 0.0, 0.0;
    const BaselineResult out = mad_detect(r);
    for (char c : out.flagged) CHECK(c == 0);
    REQUIRE(!out.warnings.empty());
    CHECK(out.warnings[0].find("degenerate") != std::string::npos);
}

TEST_CASE("MAD fallback recomputes the scale from non-median entries") {
    Vec r(7);
    r << 0.0, 0.0, 0.0, 0.0, 5.0, 7.0, 9.0;  // MAD = 0, non-median spread = {5,7,9}
    const BaselineResult out = mad_detect(r);
    REQUIRE(!out.warnings.empty());
    CHECK(out.warnings[0].find("recomputed") != std::string::npos);
    // fallback scale = mad({5,7,9}) = 2; scores = 0.6745*|r|/2
    CHECK(out.scores[4] == Catch::Approx(0.6745 * 5.0 / 2.0).epsilon(1e-12));
    CHECK(out.scores[6] == Catch::Approx(0.6745 * 9.0 / 2.0).epsilon(1e-12));
    std::vector<char> want{0, 0, 0, 0, 0, 0, 1};  // only 3.03 exceeds 2.8
    CHECK(out.flagged == want);
}

TEST_CASE("balanced +-c residuals score 0.6745 and pass the threshold") {
    Vec r(6);
    r << 3.0, -3.0, 3.0, -3.0, 3.0, -3.0;
    const BaselineResult out = mad_detect(r);
    for (Eigen::Index i = 0; i < 6; ++i) CHECK(out.scores[i] == Catch::Approx(0.6745).epsilon(1e-12));
    for (char c : out.flagged) CHECK(c == 0);
}

TEST_CASE("scores are shift and positive-scale equivariant") {
    Rng rng = make_rng(40);
    Vec r(9);
    for (int i = 0; i < 9; ++i) r[i] = draw_normal(rng);
    r[4] += 8.0;
    const BaselineResult base = mad_detect(r);
    const BaselineResult moved = mad_detect((2.5 * r.array() - 7.0).matrix());
    CHECK((base.scores - moved.scores).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(base.flagged == moved.flagged);
}

TEST_CASE("mad_detect input validation") {
    CHECK_THROWS_AS(mad_detect(Vec()), std::invalid_argument);
    Vec r(3);
    r << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(mad_detect(r, 0.0), std::invalid_argument);
    CHECK(lmf_default_z_threshold == 2.8);
}

TEST_CASE("lmf_detect flags a spike on a path") {
    const Graph g = path(7);
    Vec y(7);
    y << 1.0, 1.1, 0.9, 8.0, 1.05, 0.95, 1.0;
    const BaselineResult out = lmf_detect(g, y);
    std::vector<char> want{0, 0, 0, 1, 0, 0, 0};
    CHECK(out.flagged == want);
    CHECK(out.scores[3] > out.scores.maxCoeff() - 1e-12);
}

TEST_CASE("lmf_detect on a constant signal warns instead of failing") {
    const Graph g = path(4);
    const Vec y = Vec::Constant(4, 5.0);
    const BaselineResult out = lmf_detect(g, y);
    for (char c : out.flagged) CHECK(c == 0);
    REQUIRE(!out.warnings.empty());
    CHECK(out.warnings[0].find("identical") != std::string::npos);
}
