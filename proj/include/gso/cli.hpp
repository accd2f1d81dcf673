#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gso/bench.hpp"
#include "gso/config.hpp"
#include "gso/fixtures.hpp"
#include "gso/io.hpp"

namespace gso {

// flag misuse and missing required arguments; everything else is a runtime failure
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string out_path(const std::string& dir, const std::string& file) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / file).string();
}

inline void run_generate(const std::string& config_path, std::uint64_t seed, bool seed_set,
                         const std::string& out_dir) {
    if (config_path.empty()) throw UsageError("generate requires --config <path>");
    BenchConfig cfg = bench_config_from(parse_config_file(config_path));
    const std::uint64_t base = seed_set ? seed : cfg.base_seed;

    Rng graph_rng = stream_rng(base, stream_graph);
    const Graph g = cfg.graph_from_file ? load_graph(cfg) : generate_graph(cfg.graph_spec, graph_rng);
    const LaplacianSpectrum sp = spectrum(g);

    Rng data_rng = stream_rng(base, stream_data);
    const Vec f = smooth_signal(sp, cfg.synth.ridge, data_rng);
    const Vec noisy = add_noise(f, cfg.synth.snr, data_rng);
    const GroundTruth gt = inject_outliers(noisy, f, cfg.synth.n_outliers, data_rng);

    write_edge_list(out_path(out_dir, "graph.tsv"), g);
    if (g.coords) write_coords(out_path(out_dir, "coords.tsv"), *g.coords);
    write_signal_csv(out_path(out_dir, "signal.csv"), gt.y);
    write_truth_csv(out_path(out_dir, "truth.csv"), gt);
    std::cout << "generated n=" << g.n << " graph with " << g.edges.size() << " edges, "
              << cfg.synth.n_outliers << " outliers (seed " << base << ") -> " << out_dir << "\n";
}

inline void run_detect(const std::string& graph_path, const std::string& signal_path,
                       const std::string& config_path, double tau_delta_flag, bool tau_delta_set,
                       std::uint64_t seed, bool seed_set, const std::string& out_dir) {
    const Graph g = read_edge_list(graph_path);
    const Vec y = read_signal_csv(signal_path);

    ModelConfig cfg;
    if (!config_path.empty()) {
        const RawConfig raw = parse_config_file(config_path);
        SectionReader model(raw, "model");
        cfg.alpha = model.get_double("alpha", cfg.alpha);
        cfg.beta = model.get_double("beta", cfg.beta);
        if (model.has("tau_delta")) cfg.tau_delta = model.get_double("tau_delta", 0.0);
        cfg.n_iter = static_cast<int>(model.get_int("n_iter", cfg.n_iter));
        cfg.n_burn = static_cast<int>(model.get_int("n_burn", cfg.n_burn));
        cfg.threshold = model.get_double("threshold", cfg.threshold);
        model.finish();
    }
    if (tau_delta_set) cfg.tau_delta = tau_delta_flag;
    if (seed_set) cfg.seed = seed;
    validate(cfg);

    const LaplacianSpectrum sp = spectrum(g);
    PosteriorSummary post;
    try {
        post = run_chain(cfg, g, sp, y);
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        if (msg.find("MAD") != std::string::npos)
            msg += " (pass --tau-delta <value> to set the slab precision directly)";
        throw std::runtime_error(msg);
    }

    write_json(out_path(out_dir, "detection.json"), detection_json(post, cfg));
    int flagged = 0;
    for (char c : post.classified) flagged += c ? 1 : 0;
    std::cout << "detect: n=" << g.n << ", flagged " << flagged << " node(s) at threshold "
              << cfg.threshold << " -> " << out_path(out_dir, "detection.json") << "\n";
    for (const std::string& w : post.warnings) std::cerr << "warning: " << w << "\n";
}

inline void run_benchmark_cmd(const std::string& config_path, std::uint64_t seed, bool seed_set,
                              int threads, bool threads_set, bool fixed_graph_flag,
                              const std::string& out_dir) {
    BenchConfig cfg = bench_config_from(parse_config_file(config_path));
    if (seed_set) cfg.base_seed = seed;
    if (threads_set) cfg.threads = threads;
    if (fixed_graph_flag) cfg.fixed_graph = true;

    const BenchTable table = run_benchmark(cfg);
    const std::string csv = bench_csv(table);
    std::ofstream csv_out = open_out(out_path(out_dir, "bench.csv"));
    csv_out << csv;
    csv_out.close();
    write_json(out_path(out_dir, "bench.json"), bench_json(table, cfg));

    std::cout << csv;
    for (const std::string& w : table.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "benchmark '" << cfg.label << "': " << table.trials.size() << " trials in "
              << table.wall_clock_sec << "s -> " << out_dir << "\n";
}

inline void run_oracle_check(int n_iter, int n_burn, std::uint64_t seed,
                             const std::string& out_dir) {
    constexpr double tol = 0.03;
    std::ostringstream report;
    report << "sampler-vs-quadrature agreement (" << n_iter - n_burn << " kept draws, tol " << tol
           << ")\n";
    bool all_pass = true;
    for (const GoldenFixture& fix : golden_fixtures()) {
        const FixtureEval ev = evaluate_fixture(fix, n_iter, n_burn, seed);
        const bool pass = ev.max_abs_diff <= tol;
        all_pass = all_pass && pass;
        report << fix.name << ": max|gibbs - oracle| = " << fmt_double(ev.max_abs_diff)
               << ", max|oracle - reference| = " << fmt_double(ev.max_ref_drift) << " -> "
               << (pass ? "PASS" : "FAIL") << "\n";
    }
    report << (all_pass ? "RESULT: PASS" : "RESULT: FAIL") << "\n";

    std::ofstream out = open_out(out_path(out_dir, "oracle_report.txt"));
    out << report.str();
    out.close();
    std::cout << report.str();
    if (!all_pass) throw std::runtime_error("oracle-check: sampler disagrees with the quadrature oracle");
}

}  // namespace detail

inline int cli(int argc, const char* const* argv) {
    CLI::App app{"Bayesian node-level outlier detection on graph signals"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    CLI::Option* seed_opt = app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--config", config_path, "configuration file");
    app.add_option("--out", out_dir, "output directory (created if absent)");
    CLI::Option* threads_opt = app.add_option("--threads", threads, "worker threads");

    CLI::App* gen = app.add_subcommand("generate", "emit a graph and synthetic signal files");
    gen->fallthrough();

    CLI::App* det = app.add_subcommand("detect", "run the sampler on a graph + signal");
    det->fallthrough();
    std::string graph_path, signal_path;
    double tau_delta = 0.0;
    det->add_option("--graph", graph_path, "edge-list file")->required();
    det->add_option("--signal", signal_path, "signal CSV")->required();
    CLI::Option* td_opt = det->add_option("--tau-delta", tau_delta, "slab precision override");

    CLI::App* bench = app.add_subcommand("benchmark", "run a benchmark config");
    bench->fallthrough();
    bool print_config = false, fixed_graph = false;
    bench->add_flag("--print-config", print_config, "print the default config and exit");
    bench->add_flag("--fixed-graph", fixed_graph, "share one graph across all trials");

    CLI::App* oc = app.add_subcommand("oracle-check", "sampler-vs-oracle agreement suite");
    oc->fallthrough();
    int oc_iters = 22000, oc_burn = 2000;
    oc->add_option("--iters", oc_iters, "total sweeps per fixture");
    oc->add_option("--burn", oc_burn, "burn-in sweeps per fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            detail::run_generate(config_path, seed, seed_opt->count() > 0, out_dir);
        } else if (det->parsed()) {
            detail::run_detect(graph_path, signal_path, config_path, tau_delta, td_opt->count() > 0,
                               seed, seed_opt->count() > 0, out_dir);
        } else if (bench->parsed()) {
            if (print_config) {
                std::cout << default_config_text();
                return 0;
            }
            if (config_path.empty()) throw UsageError("benchmark requires --config <path>");
            detail::run_benchmark_cmd(config_path, seed, seed_opt->count() > 0, threads,
                                      threads_opt->count() > 0, fixed_graph, out_dir);
        } else if (oc->parsed()) {
            detail::run_oracle_check(oc_iters, oc_burn, seed, out_dir);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

inline int cli(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("gso");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& s : full) argv.push_back(s.c_str());
    return cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace gso
