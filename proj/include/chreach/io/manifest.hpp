#pragma once

#include "chreach/core.hpp"
#include "chreach/io/emit.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace chreach {

inline constexpr const char* kToolVersion = "chreach 0.1.0";

/// FNV-1a 64-bit content hash, hex encoded.
inline std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Run provenance: config echo, input hash, per-phase wall-clock timings.
/// Timings are non-deterministic, so they live here and never in the data
/// outputs.
class RunManifest {
 public:
  RunManifest(nlohmann::json config_echo, std::string input_hash)
      : config_(std::move(config_echo)), hash_(std::move(input_hash)) {}

  void start_phase(const std::string& name) {
    current_ = name;
    t0_ = std::chrono::steady_clock::now();
  }

  void end_phase() {
    if (current_.empty()) return;
    timings_[current_] +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
            .count();
    current_.clear();
  }

  void write(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["config"] = config_;
    j["input_hash"] = hash_;
    for (const auto& [k, v] : timings_) j["timings_seconds"][k] = v;
    emit_json(j, path);
  }

 private:
  nlohmann::json config_;
  std::string hash_;
  std::map<std::string, double> timings_;
  std::string current_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace chreach
