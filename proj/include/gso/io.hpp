#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "gso/graph.hpp"
#include "gso/sampler.hpp"
#include "gso/synth.hpp"

namespace gso {

// Shortest round-trip decimal form.
inline std::string fmt_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, const std::string& what) {
    double x = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, x);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::runtime_error("malformed number in " + what + ": '" + s + "'");
    return x;
}

inline long long parse_int(const std::string& s, const std::string& what) {
    long long x = 0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, x);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::runtime_error("malformed integer in " + what + ": '" + s + "'");
    return x;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

// Edge-list format: header line `#n=<N>`, then one `i<TAB>j<TAB>w` line per edge.
inline void write_edge_list(const std::string& path, const Graph& g) {
    auto f = open_out(path);
    f << "#n=" << g.n << "\n";
    for (const Edge& e : g.edges)
        f << e.i << "\t" << e.j << "\t" << fmt_double(e.w) << "\n";
}

inline Graph read_edge_list(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("#n=", 0) != 0)
        throw std::runtime_error(path + ": missing `#n=<N>` header line");
    const int n = static_cast<int>(parse_int(line.substr(3), path + " header"));
    std::vector<std::tuple<int, int, double>> edges;
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto parts = split(line, '\t');
        const std::string where = path + ":" + std::to_string(lineno);
        if (parts.size() != 3) throw std::runtime_error(where + ": expected `i<TAB>j<TAB>w`");
        edges.emplace_back(static_cast<int>(parse_int(parts[0], where + " node i")),
                           static_cast<int>(parse_int(parts[1], where + " node j")),
                           parse_double(parts[2], where + " weight"));
    }
    return build_graph(n, edges);
}

// Coordinates format: one `i<TAB>x<TAB>y` line per node.
inline void write_coords(const std::string& path, const Mat& coords) {
    auto f = open_out(path);
    for (Eigen::Index i = 0; i < coords.rows(); ++i)
        f << i << "\t" << fmt_double(coords(i, 0)) << "\t" << fmt_double(coords(i, 1)) << "\n";
}

inline Mat read_coords(const std::string& path, int n) {
    auto f = open_in(path);
    Mat coords = Mat::Zero(n, 2);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto parts = split(line, '\t');
        const std::string where = path + ":" + std::to_string(lineno);
        if (parts.size() != 3) throw std::runtime_error(where + ": expected `i<TAB>x<TAB>y`");
        const int i = static_cast<int>(parse_int(parts[0], where + " node"));
        if (i < 0 || i >= n) throw std::runtime_error(where + ": node index out of range");
        if (seen[static_cast<std::size_t>(i)]) throw std::runtime_error(where + ": duplicate node index");
        seen[static_cast<std::size_t>(i)] = 1;
        coords(i, 0) = parse_double(parts[1], where + " x");
        coords(i, 1) = parse_double(parts[2], where + " y");
    }
    for (int i = 0; i < n; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw std::runtime_error(path + ": missing coordinates for node " + std::to_string(i));
    return coords;
}

// Signal CSV: `node,value` header then one row per node.
inline void write_signal_csv(const std::string& path, const Vec& y) {
    auto f = open_out(path);
    f << "node,value\n";
    for (Eigen::Index i = 0; i < y.size(); ++i) f << i << "," << fmt_double(y[i]) << "\n";
}

inline Vec read_signal_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || line != "node,value")
        throw std::runtime_error(path + ": expected `node,value` header");
    std::vector<double> vals;
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto parts = split(line, ',');
        const std::string where = path + ":" + std::to_string(lineno);
        if (parts.size() != 2) throw std::runtime_error(where + ": expected `node,value`");
        const long long i = parse_int(parts[0], where + " node");
        if (i != static_cast<long long>(vals.size()))
            throw std::runtime_error(where + ": node indices must be 0,1,2,... in order");
        vals.push_back(parse_double(parts[1], where + " value"));
    }
    return Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

// Ground-truth CSV: node,f,y,is_outlier,injected_value.
inline void write_truth_csv(const std::string& path, const GroundTruth& gt) {
    auto f = open_out(path);
    f << "node,f,y,is_outlier,injected_value\n";
    for (Eigen::Index i = 0; i < gt.y.size(); ++i)
        f << i << "," << fmt_double(gt.f[i]) << "," << fmt_double(gt.y[i]) << ","
          << int(gt.outlier_mask[static_cast<std::size_t>(i)]) << ","
          << fmt_double(gt.outlier_values[i]) << "\n";
}

inline GroundTruth read_truth_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || line != "node,f,y,is_outlier,injected_value")
        throw std::runtime_error(path + ": expected `node,f,y,is_outlier,injected_value` header");
    std::vector<double> fs, ys, vals;
    std::vector<char> mask;
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto parts = split(line, ',');
        const std::string where = path + ":" + std::to_string(lineno);
        if (parts.size() != 5)
            throw std::runtime_error(where + ": expected `node,f,y,is_outlier,injected_value`");
        if (parse_int(parts[0], where + " node") != static_cast<long long>(ys.size()))
            throw std::runtime_error(where + ": node indices must be 0,1,2,... in order");
        fs.push_back(parse_double(parts[1], where + " f"));
        ys.push_back(parse_double(parts[2], where + " y"));
        const long long flag = parse_int(parts[3], where + " is_outlier");
        if (flag != 0 && flag != 1) throw std::runtime_error(where + ": is_outlier must be 0 or 1");
        mask.push_back(static_cast<char>(flag));
        vals.push_back(parse_double(parts[4], where + " injected_value"));
    }
    GroundTruth gt;
    gt.f = Eigen::Map<const Vec>(fs.data(), static_cast<Eigen::Index>(fs.size()));
    gt.y = Eigen::Map<const Vec>(ys.data(), static_cast<Eigen::Index>(ys.size()));
    gt.outlier_mask = std::move(mask);
    gt.outlier_values = Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    return gt;
}

inline nlohmann::json detection_json(const PosteriorSummary& summary, const ModelConfig& cfg) {
    nlohmann::json j;
    j["version"] = 1;
    j["p_outlier"] = std::vector<double>(summary.p_outlier.begin(), summary.p_outlier.end());
    std::vector<bool> classified(summary.classified.begin(), summary.classified.end());
    j["classified"] = classified;
    j["f_mean"] = std::vector<double>(summary.f_mean.begin(), summary.f_mean.end());
    j["tau_mean"] = summary.tau_mean;
    j["gamma_mean"] = summary.gamma_mean;
    j["n_kept"] = summary.n_kept;
    j["warnings"] = summary.warnings;
    j["config"] = {{"alpha", cfg.alpha},       {"beta", cfg.beta},
                   {"tau_delta", summary.tau_delta}, {"n_iter", cfg.n_iter},
                   {"n_burn", cfg.n_burn},     {"seed", cfg.seed},
                   {"threshold", cfg.threshold}};
    return j;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    auto f = open_out(path);
    f << j.dump(2) << "\n";
}

}  // namespace gso
