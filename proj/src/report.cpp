#include "melnikov/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace melnikov {

std::optional<std::string> Config::get(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    return std::stod(*v);
}

int Config::get_int(const std::string& key, int fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    return std::stoi(*v);
}

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

uint64_t Config::hash() const {
    std::string blob;
    for (const auto& [k, v] : kv) {
        blob += k;
        blob += '=';
        blob += v;
        blob += '\n';
    }
    return fnv1a(blob);
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    Config cfg;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        auto strip = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = strip(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: malformed line " + std::to_string(lineno));
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;
        cfg.kv[key] = val;
    }
    return cfg;
}

}  // namespace melnikov
