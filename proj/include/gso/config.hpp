#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gso/io.hpp"

namespace gso {

// Flat sectioned key-value format: `[section]` headers, `key = value` lines,
// full-line `#` comments, optional double quotes around string values.
struct RawConfig {
    std::map<std::string, std::map<std::string, std::string>> sections;
};

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline RawConfig parse_config_text(const std::string& text, const std::string& origin) {
    RawConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        const std::string where = origin + ":" + std::to_string(lineno);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw std::runtime_error(where + ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw std::runtime_error(where + ": empty section name");
            cfg.sections[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(where + ": expected `key = value` or `[section]`");
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw std::runtime_error(where + ": empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (section.empty()) throw std::runtime_error(where + ": key outside any [section]");
        if (!cfg.sections[section].emplace(key, value).second)
            throw std::runtime_error(where + ": duplicate key '" + key + "' in [" + section + "]");
    }
    return cfg;
}

inline RawConfig parse_config_file(const std::string& path) {
    auto f = open_in(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

// Typed accessor for one section; every key must be consumed, so misspelled
// options are reported rather than silently ignored.
class SectionReader {
  public:
    SectionReader(const RawConfig& cfg, const std::string& name) : name_(name) {
        const auto it = cfg.sections.find(name);
        if (it != cfg.sections.end()) pending_ = it->second;
    }

    bool has(const std::string& key) const { return pending_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) {
        const auto it = pending_.find(key);
        if (it == pending_.end()) return fallback;
        const std::string v = it->second;
        pending_.erase(it);
        return v;
    }

    std::string require_string(const std::string& key) {
        const auto it = pending_.find(key);
        if (it == pending_.end())
            throw std::runtime_error("missing required key '" + key + "' in [" + name_ + "]");
        const std::string v = it->second;
        pending_.erase(it);
        return v;
    }

    double get_double(const std::string& key, double fallback) {
        const auto it = pending_.find(key);
        if (it == pending_.end()) return fallback;
        const double v = parse_double(it->second, "[" + name_ + "] " + key);
        pending_.erase(it);
        return v;
    }

    long long get_int(const std::string& key, long long fallback) {
        const auto it = pending_.find(key);
        if (it == pending_.end()) return fallback;
        const long long v = parse_int(it->second, "[" + name_ + "] " + key);
        pending_.erase(it);
        return v;
    }

    bool get_bool(const std::string& key, bool fallback) {
        const auto it = pending_.find(key);
        if (it == pending_.end()) return fallback;
        const std::string v = it->second;
        pending_.erase(it);
        if (v == "true") return true;
        if (v == "false") return false;
        throw std::runtime_error("[" + name_ + "] " + key + " must be 'true' or 'false', got '" + v + "'");
    }

    void finish() const {
        if (pending_.empty()) return;
        std::string keys;
        for (const auto& [k, _] : pending_) keys += (keys.empty() ? "'" : ", '") + k + "'";
        throw std::runtime_error("unknown key " + keys + " in [" + name_ + "]");
    }

  private:
    std::string name_;
    std::map<std::string, std::string> pending_;
};

}  // namespace gso
