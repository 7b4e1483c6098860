#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lst {

inline constexpr const char* kToolVersion = "0.1.0";

// Record of one CLI run: what was executed, from which inputs, and a content
// hash per output file. Two manifests that agree on everything but the
// timestamp certify identical outputs.
struct RunManifest {
    std::string command;
    std::vector<std::string> config_paths;
    std::uint64_t seed{0};
    std::string out_dir;
    std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> hash
    std::string tool_version{kToolVersion};
    std::string timestamp;  // ISO-8601 UTC
};

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string hash_file(const std::string& path);

// Key/value text, artifacts as artifact.<filename> = <hash> lines.
void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

// Everything except the timestamp.
bool same_identity(const RunManifest& a, const RunManifest& b);

std::string utc_timestamp_now();

}  // namespace lst
