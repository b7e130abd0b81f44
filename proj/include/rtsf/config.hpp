#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtsf {

// Errors that should exit with code 1 (bad config) rather than 2 (runtime
// failure).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat `key = value` text with dotted section keys, '#' comments and blank
// lines. Keys are unique; every key is validated against the harness's
// known-key registry at parse time so typos are reported with their line.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string get_str(const std::string& key, const std::string& fallback) const;
    std::string require_str(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::uint64_t> get_u64_list(const std::string& key,
                                            const std::vector<std::uint64_t>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    double parse_double_or_throw(const std::string& key, const std::string& raw) const;

    std::map<std::string, std::string> kv_;
    std::map<std::string, int> line_; // key -> 1-based line for diagnostics
    std::string origin_;
};

// Keys the harness understands; anything else is a config error.
const std::vector<std::string>& known_config_keys();

} // namespace rtsf
