#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lst {

// Plain-text key/value config: one `key = value` per line, '#' starts a
// comment, keys may be dotted (e.g. slashing.penalty). Duplicate keys are an
// error. Values keep their raw text; typed getters parse on demand.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    std::string require_string(const std::string& key) const;
    double require_double(const std::string& key) const;
    long require_long(const std::string& key) const;
    bool require_bool(const std::string& key) const;

    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<long> get_long(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    // Keys beginning with `prefix`, in file order, with the prefix stripped.
    std::vector<std::pair<std::string, std::string>> entries_with_prefix(const std::string& prefix) const;

    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

}  // namespace lst
