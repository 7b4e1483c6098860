#include "lst/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lst/errors.hpp"

namespace lst {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw config_error(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        if (cfg.values_.count(key)) {
            throw config_error(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        cfg.values_[key] = value;
        cfg.order_.push_back(key);
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> KeyValueConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
    auto raw = get_string(key);
    if (!raw) return std::nullopt;
    double v = 0;
    auto [p, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
    if (ec != std::errc{} || p != raw->data() + raw->size()) {
        throw config_error(origin_ + ": key '" + key + "': not a number: '" + *raw + "'");
    }
    return v;
}

std::optional<long> KeyValueConfig::get_long(const std::string& key) const {
    auto raw = get_string(key);
    if (!raw) return std::nullopt;
    long v = 0;
    auto [p, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
    if (ec != std::errc{} || p != raw->data() + raw->size()) {
        throw config_error(origin_ + ": key '" + key + "': not an integer: '" + *raw + "'");
    }
    return v;
}

std::optional<bool> KeyValueConfig::get_bool(const std::string& key) const {
    auto raw = get_string(key);
    if (!raw) return std::nullopt;
    if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
    if (*raw == "false" || *raw == "0" || *raw == "no") return false;
    throw config_error(origin_ + ": key '" + key + "': not a boolean: '" + *raw + "'");
}

std::string KeyValueConfig::require_string(const std::string& key) const {
    auto v = get_string(key);
    if (!v) throw config_error(origin_ + ": missing required key '" + key + "'");
    return *v;
}

double KeyValueConfig::require_double(const std::string& key) const {
    auto v = get_double(key);
    if (!v) throw config_error(origin_ + ": missing required key '" + key + "'");
    return *v;
}

long KeyValueConfig::require_long(const std::string& key) const {
    auto v = get_long(key);
    if (!v) throw config_error(origin_ + ": missing required key '" + key + "'");
    return *v;
}

bool KeyValueConfig::require_bool(const std::string& key) const {
    auto v = get_bool(key);
    if (!v) throw config_error(origin_ + ": missing required key '" + key + "'");
    return *v;
}

std::vector<std::pair<std::string, std::string>> KeyValueConfig::entries_with_prefix(
    const std::string& prefix) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& key : order_) {
        if (key.rfind(prefix, 0) == 0) {
            out.emplace_back(key.substr(prefix.size()), values_.at(key));
        }
    }
    return out;
}

}  // namespace lst
