#pragma once

#include "chreach/core.hpp"
#include "chreach/reach/extremal.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace chreach {

/// Shortest-round-trip decimal formatting (17 significant digits).
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Writes content to path atomically (temp file + rename).
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw NumericalError("cannot open " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

/// hulls_t<k>.csv with header vertex_index,x1,...,xn; 2-D files carry the
/// counter-clockwise vertex order. UTF-8, LF, 17 significant digits.
inline void emit_hull_csvs(const HullEstimate& est,
                           const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (int k = 0; k < int(est.hulls.size()); ++k) {
    const auto& hull = est.hulls[k];
    const int n = hull.dim();
    std::string body = "vertex_index";
    for (int c = 1; c <= n; ++c) body += ",x" + std::to_string(c);
    body += "\n";
    for (int i = 0; i < int(hull.points.size()); ++i) {
      body += std::to_string(i);
      for (int c = 0; c < n; ++c) {
        body += "," + format_double(hull.points[i][c]);
      }
      body += "\n";
    }
    write_file_atomic(dir / ("hulls_t" + std::to_string(k) + ".csv"), body);
  }
}

/// Parses a hulls_t<k>.csv back into a vertex list (round-trip checks).
inline std::vector<Vec> parse_hull_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty csv " + path.string());
  const int n = int(std::count(line.begin(), line.end(), ','));
  std::vector<Vec> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Vec p(n);
    std::size_t pos = line.find(',');
    for (int c = 0; c < n; ++c) {
      const std::size_t next = line.find(',', pos + 1);
      p[c] = std::stod(line.substr(pos + 1, next - pos - 1));
      pos = next;
    }
    points.push_back(p);
  }
  return points;
}

inline void emit_json(const nlohmann::json& j,
                      const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  write_file_atomic(path, j.dump(2) + "\n");
}

inline nlohmann::json hull_metrics_json(const HullEstimate& est,
                                        const std::vector<double>& eps_naive,
                                        const std::vector<double>& eps_quad) {
  nlohmann::json j;
  for (int k = 0; k < int(est.hulls.size()); ++k) {
    j["time"].push_back(est.grid.t(k));
    if (!eps_naive.empty()) j["eps_naive"].push_back(eps_naive[k]);
    if (!eps_quad.empty()) j["eps_quad"].push_back(eps_quad[k]);
  }
  j["samples"] = est.sample_count;
  j["scheme"] = est.scheme;
  j["seed"] = est.seed;
  return j;
}

}  // namespace chreach
