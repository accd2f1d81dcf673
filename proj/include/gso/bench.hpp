#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gso/baselines.hpp"
#include "gso/config.hpp"
#include "gso/graph_gen.hpp"
#include "gso/io.hpp"
#include "gso/metrics.hpp"
#include "gso/sampler.hpp"
#include "gso/synth.hpp"

namespace gso {

struct BenchConfig {
    std::string label = "setting";
    GenSpec graph_spec{};
    bool graph_from_file = false;
    std::string graph_path;
    std::string coords_path;
    SynthConfig synth{};
    ModelConfig model{};
    double z_threshold = lmf_default_z_threshold;
    int n_trials = 100;
    std::uint64_t base_seed = 0;
    std::vector<std::string> methods{"proposed", "lmf"};
    bool fixed_graph = false;
    int threads = 1;
};

inline std::string default_config_text() {
    return
        "[benchmark]\n"
        "label = setting\n"
        "trials = 100\n"
        "seed = 0\n"
        "methods = proposed,lmf\n"
        "fixed_graph = false\n"
        "threads = 1\n"
        "\n"
        "[graph]\n"
        "# kind: erdos_renyi | geometric | knn | file\n"
        "kind = erdos_renyi\n"
        "n = 100\n"
        "p = 0.7\n"
        "radius = 0.3\n"
        "k = 7\n"
        "max_attempts = 1000\n"
        "# path = graph.tsv        (kind = file)\n"
        "# coords_path = coords.tsv\n"
        "\n"
        "[synth]\n"
        "snr = 2\n"
        "m = 5\n"
        "ridge = 0.1\n"
        "\n"
        "[model]\n"
        "alpha = 1\n"
        "beta = 9\n"
        "n_iter = 3000\n"
        "n_burn = 1000\n"
        "threshold = 0.5\n"
        "# tau_delta = 1.0         (override the MAD calibration)\n"
        "\n"
        "[baseline]\n"
        "z_threshold = 2.8\n";
}

inline BenchConfig bench_config_from(const RawConfig& raw) {
    BenchConfig cfg;

    SectionReader bench(raw, "benchmark");
    cfg.label = bench.get_string("label", cfg.label);
    cfg.n_trials = static_cast<int>(bench.get_int("trials", cfg.n_trials));
    cfg.base_seed = static_cast<std::uint64_t>(bench.get_int("seed", 0));
    cfg.fixed_graph = bench.get_bool("fixed_graph", false);
    cfg.threads = static_cast<int>(bench.get_int("threads", 1));
    const std::string methods = bench.get_string("methods", "proposed,lmf");
    cfg.methods.clear();
    for (const std::string& m : split(methods, ',')) {
        const std::string name = trim(m);
        if (name != "proposed" && name != "lmf")
            throw std::runtime_error("[benchmark] methods: unknown method '" + name + "'");
        cfg.methods.push_back(name);
    }
    bench.finish();
    if (cfg.n_trials < 1) throw std::runtime_error("[benchmark] trials must be >= 1");
    if (cfg.threads < 1) throw std::runtime_error("[benchmark] threads must be >= 1");
    if (cfg.methods.empty()) throw std::runtime_error("[benchmark] methods must be nonempty");

    SectionReader graph(raw, "graph");
    const std::string kind = graph.get_string("kind", "erdos_renyi");
    cfg.graph_spec.n = static_cast<int>(graph.get_int("n", 100));
    cfg.graph_spec.p = graph.get_double("p", 0.7);
    cfg.graph_spec.radius = graph.get_double("radius", 0.3);
    cfg.graph_spec.k = static_cast<int>(graph.get_int("k", 7));
    cfg.graph_spec.max_attempts = static_cast<int>(graph.get_int("max_attempts", 1000));
    if (kind == "erdos_renyi") {
        cfg.graph_spec.kind = GraphKind::erdos_renyi;
    } else if (kind == "geometric") {
        cfg.graph_spec.kind = GraphKind::geometric;
    } else if (kind == "knn") {
        cfg.graph_spec.kind = GraphKind::knn;
    } else if (kind == "file") {
        cfg.graph_from_file = true;
        cfg.graph_path = graph.require_string("path");
        cfg.coords_path = graph.get_string("coords_path", "");
    } else {
        throw std::runtime_error("[graph] kind must be erdos_renyi, geometric, knn, or file");
    }
    graph.finish();
    if (!cfg.graph_from_file) validate(cfg.graph_spec);

    SectionReader synth(raw, "synth");
    cfg.synth.snr = synth.get_double("snr", 2.0);
    cfg.synth.n_outliers = static_cast<int>(synth.get_int("m", 5));
    cfg.synth.ridge = synth.get_double("ridge", 0.1);
    synth.finish();

    SectionReader model(raw, "model");
    cfg.model.alpha = model.get_double("alpha", 1.0);
    cfg.model.beta = model.get_double("beta", 9.0);
    if (model.has("tau_delta")) cfg.model.tau_delta = model.get_double("tau_delta", 0.0);
    cfg.model.n_iter = static_cast<int>(model.get_int("n_iter", 3000));
    cfg.model.n_burn = static_cast<int>(model.get_int("n_burn", 1000));
    cfg.model.threshold = model.get_double("threshold", 0.5);
    model.finish();
    validate(cfg.model);

    SectionReader baseline(raw, "baseline");
    cfg.z_threshold = baseline.get_double("z_threshold", lmf_default_z_threshold);
    baseline.finish();
    if (!(cfg.z_threshold > 0.0)) throw std::runtime_error("[baseline] z_threshold must be > 0");

    return cfg;
}

struct MethodMetrics {
    double f1 = 0.0, precision = 0.0, recall = 0.0;
    double auc = 0.0;
    bool auc_defined = false;
};

struct TrialResult {
    int index = 0;
    bool ok = false;
    std::string error;
    std::map<std::string, MethodMetrics> by_method;
    int gen_attempts = 0;
    std::vector<std::string> warnings;
};

// Substream labels hashed off each trial seed.
inline constexpr std::uint64_t stream_graph = 0;
inline constexpr std::uint64_t stream_data = 1;
inline constexpr std::uint64_t stream_chain = 2;

inline Graph generate_graph(const GenSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case GraphKind::erdos_renyi:
            return gen_erdos_renyi(spec, rng);
        case GraphKind::geometric:
            return gen_geometric(spec, rng);
        case GraphKind::knn: {
            validate(spec);
            for (int attempt = 1; attempt <= spec.max_attempts; ++attempt) {
                Graph g = gen_knn(detail::uniform_points(spec.n, rng), spec.k);
                g.gen_attempts = attempt;
                if (is_connected(g)) return g;
            }
            throw std::runtime_error("generate_graph: no connected knn draw within " +
                                     std::to_string(spec.max_attempts) + " attempts");
        }
    }
    throw std::logic_error("generate_graph: unreachable");
}

inline Graph load_graph(const BenchConfig& cfg) {
    Graph g = read_edge_list(cfg.graph_path);
    if (!cfg.coords_path.empty()) g.coords = read_coords(cfg.coords_path, g.n);
    return g;
}

// Per-trial seed is base_seed + index; graph, data, and chain draw from
// decorrelated substreams of it so stages stay independent.
inline TrialResult run_trial(const BenchConfig& cfg, int index,
                             const Graph* shared_graph = nullptr) {
    TrialResult tr;
    tr.index = index;
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(index);

    Graph local;
    const Graph* g = shared_graph;
    if (!g) {
        Rng graph_rng = stream_rng(seed, stream_graph);
        local = generate_graph(cfg.graph_spec, graph_rng);
        g = &local;
    }
    tr.gen_attempts = g->gen_attempts;

    const LaplacianSpectrum sp = spectrum(*g);
    Rng data_rng = stream_rng(seed, stream_data);
    const Vec f = smooth_signal(sp, cfg.synth.ridge, data_rng);
    const Vec noisy = add_noise(f, cfg.synth.snr, data_rng);
    const GroundTruth gt = inject_outliers(noisy, f, cfg.synth.n_outliers, data_rng);

    int n_pos = 0;
    for (char c : gt.outlier_mask) n_pos += c;
    const bool auc_defined = n_pos > 0 && n_pos < g->n;
    if (!auc_defined)
        tr.warnings.push_back("trial " + std::to_string(index) +
                              ": degenerate truth (all one class); AUC excluded");

    for (const std::string& method : cfg.methods) {
        MethodMetrics mm;
        if (method == "proposed") {
            ModelConfig model = cfg.model;
            model.seed = mix_seed(seed, stream_chain);
            const PosteriorSummary summary = run_chain(model, *g, sp, gt.y);
            const Prf1 m = prf1(gt.outlier_mask, summary.classified);
            mm.f1 = m.f1;
            mm.precision = m.precision;
            mm.recall = m.recall;
            if (auc_defined) {
                mm.auc = auc(gt.outlier_mask, summary.p_outlier);
                mm.auc_defined = true;
            }
        } else {
            const BaselineResult res = lmf_detect(*g, gt.y, cfg.z_threshold);
            const Prf1 m = prf1(gt.outlier_mask, res.flagged);
            mm.f1 = m.f1;
            mm.precision = m.precision;
            mm.recall = m.recall;
            if (auc_defined) {
                mm.auc = auc(gt.outlier_mask, res.scores);
                mm.auc_defined = true;
            }
        }
        tr.by_method[method] = mm;
    }
    tr.ok = true;
    return tr;
}

struct BenchRow {
    std::string method, setting;
    double f1_mean = 0, f1_sd = 0, recall_mean = 0, recall_sd = 0;
    double precision_mean = 0, precision_sd = 0, auc_mean = 0, auc_sd = 0;
    int n_trials = 0;
};

struct BenchTable {
    std::vector<BenchRow> rows;
    std::vector<TrialResult> trials;
    std::vector<std::string> warnings;
    double wall_clock_sec = 0.0;
};

inline void mean_sd(const std::vector<double>& v, double& mean, double& sd) {
    if (v.empty()) {
        mean = std::numeric_limits<double>::quiet_NaN();
        sd = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const Eigen::Map<const Vec> m(v.data(), static_cast<Eigen::Index>(v.size()));
    mean = m.mean();
    sd = v.size() >= 2 ? sample_sd(m) : 0.0;
}

inline BenchTable run_benchmark(const BenchConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    BenchTable table;

    std::optional<Graph> shared;
    if (cfg.graph_from_file) {
        shared = load_graph(cfg);
    } else if (cfg.fixed_graph) {
        Rng rng = stream_rng(cfg.base_seed, stream_graph);
        shared = generate_graph(cfg.graph_spec, rng);
    }

    std::vector<TrialResult> trials(static_cast<std::size_t>(cfg.n_trials));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= cfg.n_trials) return;
            try {
                trials[static_cast<std::size_t>(i)] =
                    run_trial(cfg, i, shared ? &*shared : nullptr);
            } catch (const std::exception& e) {
                trials[static_cast<std::size_t>(i)].index = i;
                trials[static_cast<std::size_t>(i)].ok = false;
                trials[static_cast<std::size_t>(i)].error = e.what();
            }
        }
    };
    const int n_threads = std::min(cfg.threads, cfg.n_trials);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    int n_failed = 0;
    for (const TrialResult& tr : trials) {
        if (!tr.ok) {
            ++n_failed;
            table.warnings.push_back("trial " + std::to_string(tr.index) + " failed: " + tr.error);
        } else {
            for (const std::string& w : tr.warnings) table.warnings.push_back(w);
        }
    }
    if (10 * n_failed > cfg.n_trials) {
        std::string detail = table.warnings.empty() ? "" : " (first: " + table.warnings.front() + ")";
        throw std::runtime_error("run_benchmark: " + std::to_string(n_failed) + " of " +
                                 std::to_string(cfg.n_trials) + " trials failed" + detail);
    }

    for (const std::string& method : cfg.methods) {
        std::vector<double> f1s, recalls, precisions, aucs;
        for (const TrialResult& tr : trials) {
            if (!tr.ok) continue;
            const MethodMetrics& mm = tr.by_method.at(method);
            f1s.push_back(mm.f1);
            recalls.push_back(mm.recall);
            precisions.push_back(mm.precision);
            if (mm.auc_defined) aucs.push_back(mm.auc);
        }
        BenchRow row;
        row.method = method;
        row.setting = cfg.label;
        row.n_trials = static_cast<int>(f1s.size());
        mean_sd(f1s, row.f1_mean, row.f1_sd);
        mean_sd(recalls, row.recall_mean, row.recall_sd);
        mean_sd(precisions, row.precision_mean, row.precision_sd);
        mean_sd(aucs, row.auc_mean, row.auc_sd);
        table.rows.push_back(row);
    }

    table.trials = std::move(trials);
    table.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return table;
}

inline std::string bench_csv(const BenchTable& table) {
    std::string out =
        "method,setting,f1_mean,f1_sd,recall_mean,recall_sd,"
        "precision_mean,precision_sd,auc_mean,auc_sd,n_trials\n";
    for (const BenchRow& r : table.rows) {
        out += r.method + "," + r.setting + "," + fmt_double(r.f1_mean) + "," + fmt_double(r.f1_sd) +
               "," + fmt_double(r.recall_mean) + "," + fmt_double(r.recall_sd) + "," +
               fmt_double(r.precision_mean) + "," + fmt_double(r.precision_sd) + "," +
               fmt_double(r.auc_mean) + "," + fmt_double(r.auc_sd) + "," +
               std::to_string(r.n_trials) + "\n";
    }
    return out;
}

inline nlohmann::json bench_json(const BenchTable& table, const BenchConfig& cfg) {
    nlohmann::json j;
    j["version"] = 1;
    j["setting"] = cfg.label;
    j["base_seed"] = cfg.base_seed;
    j["n_trials"] = cfg.n_trials;
    j["methods"] = cfg.methods;
    j["decisions"] = {{"variance_convention", "sample"},
                      {"z_threshold", cfg.z_threshold},
                      {"graph_redrawn_per_trial", !cfg.fixed_graph && !cfg.graph_from_file},
                      {"connectivity", "rejection_resampling"}};
    j["model"] = {{"alpha", cfg.model.alpha},
                  {"beta", cfg.model.beta},
                  {"n_iter", cfg.model.n_iter},
                  {"n_burn", cfg.model.n_burn},
                  {"threshold", cfg.model.threshold}};
    j["wall_clock_sec"] = table.wall_clock_sec;
    int max_attempts_seen = 0;
    for (const TrialResult& tr : table.trials)
        max_attempts_seen = std::max(max_attempts_seen, tr.gen_attempts);
    j["max_gen_attempts_seen"] = max_attempts_seen;
    j["warnings"] = table.warnings;
    j["rows"] = nlohmann::json::array();
    for (const BenchRow& r : table.rows)
        j["rows"].push_back({{"method", r.method},
                             {"setting", r.setting},
                             {"f1_mean", r.f1_mean},
                             {"f1_sd", r.f1_sd},
                             {"recall_mean", r.recall_mean},
                             {"recall_sd", r.recall_sd},
                             {"precision_mean", r.precision_mean},
                             {"precision_sd", r.precision_sd},
                             {"auc_mean", r.auc_mean},
                             {"auc_sd", r.auc_sd},
                             {"n_trials", r.n_trials}});
    return j;
}

}  // namespace gso
