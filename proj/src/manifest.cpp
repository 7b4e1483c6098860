#include "lst/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "lst/config.hpp"
#include "lst/errors.hpp"

namespace lst {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot hash missing file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content.data(), content.size())));
    return hex;
}

std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write manifest: " + path);
    out << "command = " << manifest.command << '\n';
    for (std::size_t i = 0; i < manifest.config_paths.size(); ++i) {
        out << "config." << i << " = " << manifest.config_paths[i] << '\n';
    }
    out << "seed = " << manifest.seed << '\n';
    out << "out_dir = " << manifest.out_dir << '\n';
    out << "tool_version = " << manifest.tool_version << '\n';
    out << "timestamp = " << manifest.timestamp << '\n';
    for (const auto& [name, hash] : manifest.artifacts) {
        out << "artifact." << name << " = " << hash << '\n';
    }
}

RunManifest read_manifest(const std::string& path) {
    auto cfg = KeyValueConfig::parse_file(path);
    RunManifest m;
    m.command = cfg.require_string("command");
    for (const auto& [idx, value] : cfg.entries_with_prefix("config.")) {
        (void)idx;
        m.config_paths.push_back(value);
    }
    m.seed = static_cast<std::uint64_t>(cfg.require_long("seed"));
    m.out_dir = cfg.require_string("out_dir");
    m.tool_version = cfg.require_string("tool_version");
    m.timestamp = cfg.require_string("timestamp");
    for (const auto& [name, hash] : cfg.entries_with_prefix("artifact.")) {
        m.artifacts.emplace_back(name, hash);
    }
    return m;
}

bool same_identity(const RunManifest& a, const RunManifest& b) {
    auto sorted = [](std::vector<std::pair<std::string, std::string>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return a.command == b.command && a.config_paths == b.config_paths && a.seed == b.seed &&
           a.out_dir == b.out_dir && a.tool_version == b.tool_version &&
           sorted(a.artifacts) == sorted(b.artifacts);
}

}  // namespace lst
