#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gso/cli.hpp"
#include "temp_dir.hpp"

using namespace gso;
using gso_test::TempDir;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string write_small_config(const TempDir& tmp) {
    const std::string path = tmp.path("bench.cfg");
    std::ofstream f(path);
    f << "[benchmark]\n"
         "label = cli_tiny\n"
         "trials = 3\n"
         "seed = 3\n"
         "[graph]\n"
         "kind = erdos_renyi\n"
         "n = 12\n"
         "p = 0.5\n"
         "[synth]\n"
         "snr = 2\n"
         "m = 2\n"
         "[model]\n"
         "n_iter = 400\n"
         "n_burn = 100\n";
    return path;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
    CHECK(cli({"frobnicate"}) == 1);
    CHECK(cli({}) == 1);
    CHECK(cli({"detect", "--signal", "x.csv"}) == 1);       // missing --graph
    CHECK(cli({"detect", "--graph", "g", "--signal", "s", "--bogus"}) == 1);
    CHECK(cli({"benchmark"}) == 1);                         // missing --config
}

TEST_CASE("benchmark --print-config emits a parseable default") {
    CHECK(cli({"benchmark", "--print-config"}) == 0);
    CHECK_NOTHROW(bench_config_from(parse_config_text(default_config_text(), "default")));
}

TEST_CASE("benchmark runs are byte-identical across repeats") {
    TempDir tmp;
    const std::string cfg = write_small_config(tmp);
    REQUIRE(cli({"benchmark", "--config", cfg, "--out", tmp.path("a")}) == 0);
    REQUIRE(cli({"benchmark", "--config", cfg, "--out", tmp.path("b")}) == 0);
    const std::string csv_a = slurp(tmp.path("a") + "/bench.csv");
    CHECK(csv_a == slurp(tmp.path("b") + "/bench.csv"));
    CHECK(csv_a.find("cli_tiny") != std::string::npos);
    CHECK(std::filesystem::exists(tmp.path("a") + "/bench.json"));
    // a different seed changes the numbers
    REQUIRE(cli({"benchmark", "--config", cfg, "--seed", "99", "--out", tmp.path("c")}) == 0);
    CHECK(csv_a != slurp(tmp.path("c") + "/bench.csv"));
}

TEST_CASE("generate then detect round-trips through files") {
    TempDir tmp;
    const std::string cfg = write_small_config(tmp);
    REQUIRE(cli({"generate", "--config", cfg, "--out", tmp.path("data")}) == 0);
    REQUIRE(std::filesystem::exists(tmp.path("data") + "/graph.tsv"));
    REQUIRE(std::filesystem::exists(tmp.path("data") + "/signal.csv"));
    REQUIRE(std::filesystem::exists(tmp.path("data") + "/truth.csv"));

    REQUIRE(cli({"detect", "--graph", tmp.path("data") + "/graph.tsv", "--signal",
                 tmp.path("data") + "/signal.csv", "--config", cfg, "--seed", "5", "--out",
                 tmp.path("det")}) == 0);
    const std::string json = slurp(tmp.path("det") + "/detection.json");
    CHECK(json.find("p_outlier") != std::string::npos);
    const auto parsed = nlohmann::json::parse(json);
    CHECK(parsed["p_outlier"].size() == 12);
    CHECK(parsed["config"]["n_iter"] == 400);
}

TEST_CASE("detect distinguishes usage, degenerate input, and bad files") {
    TempDir tmp;
    {
        std::ofstream g(tmp.path("path4.tsv"));
        g << "#n=4\n0\t1\t1\n1\t2\t1\n2\t3\t1\n";
    }
    {
        std::ofstream s(tmp.path("flat.csv"));
        s << "node,value\n0,1\n1,1\n2,1\n3,2\n";  // MAD = 0, variance > 0
    }
    // MAD degeneracy is a runtime failure suggesting --tau-delta
    CHECK(cli({"detect", "--graph", tmp.path("path4.tsv"), "--signal", tmp.path("flat.csv"),
               "--out", tmp.path("d1")}) == 2);
    CHECK(cli({"detect", "--graph", tmp.path("path4.tsv"), "--signal", tmp.path("flat.csv"),
               "--tau-delta", "1.0", "--out", tmp.path("d2")}) == 0);
    CHECK(cli({"detect", "--graph", tmp.path("nope.tsv"), "--signal", tmp.path("flat.csv"),
               "--out", tmp.path("d3")}) == 2);
    {
        std::ofstream s(tmp.path("broken.csv"));
        s << "node,value\n0,abc\n";
    }
    CHECK(cli({"detect", "--graph", tmp.path("path4.tsv"), "--signal", tmp.path("broken.csv"),
               "--out", tmp.path("d4")}) == 2);
}

TEST_CASE("oracle-check writes a passing report") {
    TempDir tmp;
    REQUIRE(cli({"oracle-check", "--iters", "12000", "--burn", "2000", "--out",
                 tmp.path("oc")}) == 0);
    const std::string report = slurp(tmp.path("oc") + "/oracle_report.txt");
    CHECK(report.find("RESULT: PASS") != std::string::npos);
    for (const GoldenFixture& fix : golden_fixtures())
        CHECK(report.find(fix.name) != std::string::npos);
}
