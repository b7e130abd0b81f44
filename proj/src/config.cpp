#include "rtsf/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace rtsf {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool key_known(const std::string& key) {
    const auto& keys = known_config_keys();
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) return true;
    // sweep.axis.N carries a numeric suffix
    if (key.rfind("sweep.axis.", 0) == 0) {
        const std::string suffix = key.substr(11);
        return !suffix.empty() &&
               std::all_of(suffix.begin(), suffix.end(), [](char c) { return std::isdigit(c); });
    }
    return false;
}

} // namespace

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "data.source",      "data.name",        "data.length",     "data.seed",
        "data.path",        "data.column",      "data.train_fraction",
        "window.input_len", "window.horizon",   "window.stride",
        "anomaly.kind",     "anomaly.rate",     "anomaly.scale",   "anomaly.shape",
        "anomaly.position", "anomaly.seed",
        "method",           "seeds",
        "trend.lambda",     "trend.fidelity",   "trend.max_iter",  "trend.abs_tol",
        "trend.rel_tol",    "trend.rho",
        "select.tau",       "select.weight_kind", "select.k_prime",
        "model.kind",       "model.hidden",     "model.activation",
        "train.epochs",     "train.batch_size", "train.optimizer", "train.lr_schedule",
        "train.loss",       "train.adam.beta1", "train.adam.beta2", "train.adam.eps",
        "dir.delta",        "dir.pretrain_epochs",
        "loss_sel.pretrain_epochs", "loss_sel.keep_fraction",
    };
    return keys;
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!key_known(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (cfg.kv_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                              "' (first set on line " + std::to_string(cfg.line_.at(key)) + ")");
        if (value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty value for '" + key + "'");
        cfg.kv_[key] = value;
        cfg.line_[key] = lineno;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

std::string Config::require_str(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return it->second;
}

double Config::parse_double_or_throw(const std::string& key, const std::string& raw) const {
    std::string t = raw;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() + raw.size())
        throw ConfigError(origin_ + ": key '" + key + "': not a number: '" + raw + "'");
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    return parse_double_or_throw(key, it->second);
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::int64_t v = 0;
    const auto& s = it->second;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(origin_ + ": key '" + key + "': not an integer: '" + s + "'");
    return v;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::uint64_t v = 0;
    const auto& s = it->second;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(origin_ + ": key '" + key + "': not a nonnegative integer: '" + s + "'");
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError(origin_ + ": key '" + key + "': not a boolean: '" + it->second + "'");
}

std::vector<std::uint64_t> Config::get_u64_list(const std::string& key,
                                                const std::vector<std::uint64_t>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<std::uint64_t> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::uint64_t v = 0;
        const std::string t = trim(item);
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size())
            throw ConfigError(origin_ + ": key '" + key + "': bad list entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError(origin_ + ": key '" + key + "': empty list");
    return out;
}

} // namespace rtsf
