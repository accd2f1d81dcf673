#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "gso/io.hpp"
#include "gso/rng.hpp"
#include "temp_dir.hpp"

using namespace gso;
using gso_test::TempDir;

TEST_CASE("doubles survive the shortest round-trip format") {
    for (double x : {0.1, -1.0 / 3.0, 1e-300, 12345.6789, 3.141592653589793,
                     0.2274682115597863, -7.25, 0.0}) {
        CHECK(parse_double(fmt_double(x), "x") == x);
    }
}

TEST_CASE("parsers consume the whole token") {
    CHECK(parse_double("2.5", "v") == 2.5);
    CHECK_THROWS_WITH(parse_double("abc", "field"), Catch::Matchers::ContainsSubstring("field"));
    CHECK_THROWS_AS(parse_double("1.5x", "v"), std::runtime_error);
    CHECK(parse_int("-12", "v") == -12);
    CHECK_THROWS_AS(parse_int("2.5", "v"), std::runtime_error);
    CHECK_THROWS_AS(parse_int("", "v"), std::runtime_error);
}

TEST_CASE("edge list round-trip") {
    TempDir tmp;
    const Graph g = build_graph(3, {{0, 1, 0.37}, {1, 2, 1.0 / 3.0}});
    write_edge_list(tmp.path("g.tsv"), g);
    const Graph back = read_edge_list(tmp.path("g.tsv"));
    CHECK(back.n == 3);
    REQUIRE(back.edges.size() == 2);
    CHECK(back.edges[1].w == 1.0 / 3.0);
    CHECK((back.W - g.W).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("edge list header and row diagnostics") {
    TempDir tmp;
    {
        std::ofstream f(tmp.path("bad.tsv"));
        f << "3\n0\t1\t1.0\n";
    }
    CHECK_THROWS_WITH(read_edge_list(tmp.path("bad.tsv")),
                      Catch::Matchers::ContainsSubstring("#n="));
    {
        std::ofstream f(tmp.path("short.tsv"));
        f << "#n=3\n0\t1\n";
    }
    CHECK_THROWS_WITH(read_edge_list(tmp.path("short.tsv")),
                      Catch::Matchers::ContainsSubstring("short.tsv:2"));
    CHECK_THROWS_WITH(read_edge_list(tmp.path("missing.tsv")),
                      Catch::Matchers::ContainsSubstring("missing.tsv"));
}

TEST_CASE("signal csv round-trip and ordering checks") {
    TempDir tmp;
    Vec y(4);
    y << 0.1, -2.0 / 7.0, 5.5, -0.0625;
    write_signal_csv(tmp.path("y.csv"), y);
    const Vec back = read_signal_csv(tmp.path("y.csv"));
    REQUIRE(back.size() == 4);
    CHECK((back - y).cwiseAbs().maxCoeff() == 0.0);

    {
        std::ofstream f(tmp.path("head.csv"));
        f << "value\n0,1.0\n";
    }
    CHECK_THROWS_WITH(read_signal_csv(tmp.path("head.csv")),
                      Catch::Matchers::ContainsSubstring("node,value"));
    {
        std::ofstream f(tmp.path("order.csv"));
        f << "node,value\n1,1.0\n";
    }
    CHECK_THROWS_WITH(read_signal_csv(tmp.path("order.csv")),
                      Catch::Matchers::ContainsSubstring("order"));
}

TEST_CASE("coords round-trip and completeness checks") {
    TempDir tmp;
    Mat coords(3, 2);
    coords << 0.1, 0.9, 0.5, 0.5, 1.0 / 3.0, 0.25;
    write_coords(tmp.path("c.tsv"), coords);
    const Mat back = read_coords(tmp.path("c.tsv"), 3);
    CHECK((back - coords).cwiseAbs().maxCoeff() == 0.0);
    {
        std::ofstream f(tmp.path("dup.tsv"));
        f << "0\t0.1\t0.2\n0\t0.3\t0.4\n";
    }
    CHECK_THROWS_WITH(read_coords(tmp.path("dup.tsv"), 2),
                      Catch::Matchers::ContainsSubstring("duplicate"));
    {
        std::ofstream f(tmp.path("gap.tsv"));
        f << "0\t0.1\t0.2\n";
    }
    CHECK_THROWS_WITH(read_coords(tmp.path("gap.tsv"), 2),
                      Catch::Matchers::ContainsSubstring("missing coordinates for node 1"));
}

TEST_CASE("truth csv round-trip") {
    TempDir tmp;
    GroundTruth gt;
    gt.f = Vec(3);
    gt.f << 0.5, -0.25, 1.0 / 9.0;
    gt.y = Vec(3);
    gt.y << 0.5, 4.75, 1.0 / 9.0;
    gt.outlier_mask = {0, 1, 0};
    gt.outlier_values = Vec(3);
    gt.outlier_values << 0.0, 5.0, 0.0;
    write_truth_csv(tmp.path("t.csv"), gt);
    const GroundTruth back = read_truth_csv(tmp.path("t.csv"));
    CHECK((back.f - gt.f).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.y - gt.y).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.outlier_mask == gt.outlier_mask);
    CHECK((back.outlier_values - gt.outlier_values).cwiseAbs().maxCoeff() == 0.0);
    {
        std::ofstream f(tmp.path("flag.csv"));
        f << "node,f,y,is_outlier,injected_value\n0,0.1,0.1,2,0\n";
    }
    CHECK_THROWS_WITH(read_truth_csv(tmp.path("flag.csv")),
                      Catch::Matchers::ContainsSubstring("0 or 1"));
}

TEST_CASE("detection json carries the posterior and the resolved config") {
    PosteriorSummary post;
    post.p_outlier = Vec(2);
    post.p_outlier << 0.9, 0.05;
    post.classified = {1, 0};
    post.f_mean = Vec(2);
    post.f_mean << 0.1, 0.2;
    post.tau_mean = 3.0;
    post.gamma_mean = 0.7;
    post.n_kept = 100;
    post.tau_delta = 2.5;
    ModelConfig cfg;
    const nlohmann::json j = detection_json(post, cfg);
    CHECK(j["version"] == 1);
    CHECK(j["p_outlier"].size() == 2);
    CHECK(j["p_outlier"][0] == 0.9);
    CHECK(j["classified"][0] == true);
    CHECK(j["config"]["tau_delta"] == 2.5);
    CHECK(j["config"]["beta"] == 9.0);
}

TEST_CASE("open_out reports unwritable paths") {
    CHECK_THROWS_WITH(open_out("/nonexistent_dir_zz/x.txt"),
                      Catch::Matchers::ContainsSubstring("cannot open"));
}
