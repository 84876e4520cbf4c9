// Run configuration and structured report plumbing for the CLI: flat
// key=value config files with [section] headers, flag > file > default
// precedence, an FNV-1a config hash, and the common report envelope every
// command embeds (version, hash, seed, per-value error estimates).
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace melnikov {

inline constexpr const char* kToolVersion = "0.1.0";

struct Config {
    std::map<std::string, std::string> kv;  // canonical "section.key" -> value

    void set(const std::string& key, const std::string& value) { kv[key] = value; }
    std::optional<std::string> get(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;

    // stable content hash over sorted entries
    uint64_t hash() const;
};

// parse a config file; later files/flags override earlier values
Config parse_config_file(const std::string& path);

uint64_t fnv1a(const std::string& data);

}  // namespace melnikov
