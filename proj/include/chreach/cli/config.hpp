#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/geometry/sphere.hpp"
#include "chreach/reach/extremal.hpp"
#include "chreach/reach/integrate.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <string>
#include <vector>

namespace chreach::cli {

using nlohmann::json;

/// Schema violations: every offending key is listed, one per line.
class SchemaError : public ConfigError {
 public:
  explicit SchemaError(const std::vector<std::string>& errors)
      : ConfigError(join(errors)), errors_(errors) {}
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string out = "config schema errors:";
    for (const auto& e : errors) out += "\n  " + e;
    return out;
  }
  std::vector<std::string> errors_;
};

namespace detail {

enum class FieldType { Number, Integer, String, Bool, NumberArray, Matrix, Object };

struct Field {
  const char* key;
  FieldType type;
  bool required;
};

inline void check_object(const json& j, const std::string& path,
                         const std::vector<Field>& fields,
                         std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.push_back(path + ": expected an object");
    return;
  }
  std::set<std::string> allowed;
  for (const auto& f : fields) allowed.insert(f.key);
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) errors.push_back(path + "." + key + ": unknown key");
  }
  for (const auto& f : fields) {
    const std::string fpath = path + "." + f.key;
    if (!j.contains(f.key)) {
      if (f.required) errors.push_back(fpath + ": missing required key");
      continue;
    }
    const json& v = j.at(f.key);
    switch (f.type) {
      case FieldType::Number:
        if (!v.is_number()) errors.push_back(fpath + ": expected a number");
        break;
      case FieldType::Integer:
        if (!v.is_number_integer()) errors.push_back(fpath + ": expected an integer");
        break;
      case FieldType::String:
        if (!v.is_string()) errors.push_back(fpath + ": expected a string");
        break;
      case FieldType::Bool:
        if (!v.is_boolean()) errors.push_back(fpath + ": expected a boolean");
        break;
      case FieldType::NumberArray:
        if (!v.is_array() || v.empty()) {
          errors.push_back(fpath + ": expected a nonempty array of numbers");
        } else {
          for (const auto& e : v) {
            if (!e.is_number()) {
              errors.push_back(fpath + ": expected a nonempty array of numbers");
              break;
            }
          }
        }
        break;
      case FieldType::Matrix:
        if (!v.is_array() || v.empty() || !v.front().is_array()) {
          errors.push_back(fpath + ": expected an array of rows");
        }
        break;
      case FieldType::Object:
        if (!v.is_object()) errors.push_back(fpath + ": expected an object");
        break;
    }
  }
}

inline void check_set(const json& j, const std::string& path,
                      std::vector<std::string>& errors, bool allow_singleton) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    errors.push_back(path + ": expected an object with a \"type\" string");
    return;
  }
  const std::string type = j.at("type");
  using F = Field;
  if (type == "ball") {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"center", FieldType::NumberArray, true},
                  F{"radius", FieldType::Number, true}},
                 errors);
  } else if (type == "ellipsoid") {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"center", FieldType::NumberArray, true},
                  F{"shape", FieldType::Matrix, true}},
                 errors);
  } else if (type == "singleton" && allow_singleton) {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"point", FieldType::NumberArray, true}},
                 errors);
  } else {
    errors.push_back(path + ".type: unsupported set type \"" + type + "\"");
  }
}

inline void check_grid(const json& j, const std::string& path,
                       std::vector<std::string>& errors) {
  using F = Field;
  check_object(j, path,
               {F{"t0", FieldType::Number, false},
                F{"tf", FieldType::Number, true},
                F{"steps", FieldType::Integer, true}},
               errors);
}

inline void check_directions(const json& j, const std::string& path,
                             std::vector<std::string>& errors) {
  using F = Field;
  check_object(j, path,
               {F{"M", FieldType::Integer, true},
                F{"scheme", FieldType::String, true},
                F{"seed", FieldType::Integer, false}},
               errors);
  if (j.is_object() && j.contains("scheme") && j.at("scheme").is_string()) {
    const std::string s = j.at("scheme");
    if (s != "uniform-angle" && s != "fibonacci" && s != "random") {
      errors.push_back(path + ".scheme: must be uniform-angle, fibonacci, or random");
    }
  }
}

inline void check_system(const json& j, const std::string& path,
                         std::vector<std::string>& errors) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    errors.push_back(path + ": expected an object with a \"type\" string");
    return;
  }
  const std::string type = j.at("type");
  using F = Field;
  if (type == "attraction-repulsion") {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"x_attract", FieldType::NumberArray, false},
                  F{"x_repel", FieldType::NumberArray, false},
                  F{"cutoff", FieldType::Number, false}},
                 errors);
  } else if (type == "single-integrator") {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"n", FieldType::Integer, true}},
                 errors);
  } else if (type == "dubins") {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"speed", FieldType::Number, false},
                  F{"turn_rate", FieldType::Number, false},
                  F{"G", FieldType::Matrix, false}},
                 errors);
  } else if (type == "neural-loop") {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"policy_file", FieldType::String, true},
                  F{"A", FieldType::Matrix, true},
                  F{"B", FieldType::Matrix, true}},
                 errors);
  } else if (type == "spacecraft-omega") {
    check_object(j, path,
                 {F{"type", FieldType::String, true},
                  F{"J", FieldType::NumberArray, false},
                  F{"K", FieldType::NumberArray, false},
                  F{"ubar", FieldType::NumberArray, false}},
                 errors);
  } else {
    errors.push_back(path + ".type: unsupported system type \"" + type + "\"");
  }
}

}  // namespace detail

inline const std::set<std::string>& experiment_ids() {
  static const std::set<std::string> ids = {
      "reach",   "dubins-rect",    "dubins-lift", "nn-loop",
      "compare", "spacecraft-mpc", "validate"};
  return ids;
}

/// Validates a parsed config against the shipped schema (strict: unknown
/// keys are rejected, every offending key path is reported).
inline void validate_config(const json& cfg) {
  std::vector<std::string> errors;
  using F = detail::Field;
  using FT = detail::FieldType;
  if (!cfg.is_object()) {
    throw SchemaError({"$: config must be a JSON object"});
  }
  if (!cfg.contains("experiment") || !cfg.at("experiment").is_string() ||
      !experiment_ids().count(cfg.at("experiment").get<std::string>())) {
    errors.push_back("$.experiment: required, one of reach | dubins-rect | "
                     "dubins-lift | nn-loop | compare | spacecraft-mpc | validate");
    throw SchemaError(errors);
  }
  const std::string experiment = cfg.at("experiment");

  std::vector<F> fields = {F{"experiment", FT::String, true},
                           F{"seed", FT::Integer, false},
                           F{"out_dir", FT::String, false},
                           F{"threads", FT::Integer, false}};
  const bool has_sets = experiment == "reach" || experiment == "validate";
  if (has_sets) {
    fields.insert(fields.end(),
                  {F{"system", FT::Object, true},
                   F{"disturbance_set", FT::Object, true},
                   F{"initial_set", FT::Object, true},
                   F{"grid", FT::Object, true},
                   F{"directions", FT::Object, true},
                   F{"lipschitz_probes", FT::Integer, false}});
    if (experiment == "validate") {
      fields.push_back(F{"mc_rollouts", FT::Integer, false});
      fields.push_back(F{"slack", FT::Number, false});
    }
  } else if (experiment == "dubins-rect") {
    fields.insert(fields.end(),
                  {F{"speed", FT::Number, false},
                   F{"turn_rate", FT::Number, false},
                   F{"delta_w", FT::NumberArray, true},
                   F{"x0bar", FT::NumberArray, true},
                   F{"delta_x0", FT::NumberArray, true},
                   F{"lambdas", FT::NumberArray, true},
                   F{"grid", FT::Object, true},
                   F{"directions", FT::Object, true}});
  } else if (experiment == "dubins-lift") {
    fields.insert(fields.end(),
                  {F{"speed", FT::Number, false},
                   F{"turn_rate", FT::Number, false},
                   F{"G", FT::Matrix, false},
                   F{"w_radius", FT::Number, false},
                   F{"g_extra", FT::NumberArray, false},
                   F{"initial_set", FT::Object, true},
                   F{"epsilons", FT::NumberArray, true},
                   F{"grid", FT::Object, true},
                   F{"directions", FT::Object, true},
                   F{"mc_rollouts", FT::Integer, false}});
  } else if (experiment == "nn-loop") {
    fields.insert(fields.end(),
                  {F{"system", FT::Object, true},
                   F{"disturbance_set", FT::Object, true},
                   F{"initial_set", FT::Object, true},
                   F{"grid", FT::Object, true},
                   F{"M", FT::Integer, false},
                   F{"M_truth", FT::Integer, false},
                   F{"randup_samples", FT::Integer, false},
                   F{"mc_rollouts", FT::Integer, false}});
  } else if (experiment == "compare") {
    fields.insert(fields.end(),
                  {F{"M", FT::Integer, false},
                   F{"M_truth", FT::Integer, false},
                   F{"randup_samples", FT::Integer, false},
                   F{"steps", FT::Integer, false},
                   F{"dt", FT::Number, false},
                   F{"substeps", FT::Integer, false},
                   F{"omega0", FT::NumberArray, false},
                   F{"w_radius", FT::Number, false}});
  } else if (experiment == "spacecraft-mpc") {
    fields.insert(fields.end(),
                  {F{"M", FT::Integer, false},
                   F{"mpc_steps", FT::Integer, false},
                   F{"runs", FT::Integer, false},
                   F{"substeps", FT::Integer, false},
                   F{"tightening", FT::Object, false},
                   F{"scp", FT::Object, false}});
  }
  detail::check_object(cfg, "$", fields, errors);

  if (has_sets && cfg.contains("system")) {
    detail::check_system(cfg.at("system"), "$.system", errors);
  }
  if (cfg.contains("disturbance_set")) {
    detail::check_set(cfg.at("disturbance_set"), "$.disturbance_set", errors,
                      /*allow_singleton=*/false);
  }
  if (cfg.contains("initial_set")) {
    detail::check_set(cfg.at("initial_set"), "$.initial_set", errors,
                      /*allow_singleton=*/true);
  }
  if (cfg.contains("grid")) detail::check_grid(cfg.at("grid"), "$.grid", errors);
  if (cfg.contains("directions")) {
    detail::check_directions(cfg.at("directions"), "$.directions", errors);
  }
  if (experiment == "nn-loop" && cfg.contains("system") &&
      cfg.at("system").is_object() && cfg.at("system").value("type", "") !=
          "neural-loop") {
    errors.push_back("$.system.type: nn-loop requires the neural-loop system");
  }
  if (cfg.contains("tightening")) {
    detail::check_object(cfg.at("tightening"), "$.tightening",
                         {F{"lipschitz_probes", FT::Integer, false},
                          F{"ubar_probes", FT::Integer, false}},
                         errors);
  }
  if (cfg.contains("scp")) {
    detail::check_object(cfg.at("scp"), "$.scp",
                         {F{"cold_iterations", FT::Integer, false},
                          F{"warm_iterations", FT::Integer, false},
                          F{"trust_radius", FT::Number, false},
                          F{"tol", FT::Number, false}},
                         errors);
  }
  if (!errors.empty()) throw SchemaError(errors);
}

inline json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw SchemaError({std::string("$: JSON parse error: ") + e.what()});
  }
  validate_config(cfg);
  return cfg;
}

// Parsed-value helpers (assume validate_config passed).

inline Vec to_vec(const json& arr) {
  Vec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

inline Mat to_mat(const json& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.front().size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

inline SmoothConvexSet parse_set(const json& j) {
  const std::string type = j.at("type");
  if (type == "ball") {
    return SmoothConvexSet::ball(to_vec(j.at("center")), j.at("radius"));
  }
  return SmoothConvexSet::ellipsoid(to_vec(j.at("center")), to_mat(j.at("shape")));
}

inline InitialSetSpec parse_initial_set(const json& j) {
  if (j.at("type") == "singleton") {
    return InitialSetSpec::singleton(to_vec(j.at("point")));
  }
  return InitialSetSpec::ovaloid(parse_set(j));
}

inline TimeGrid parse_grid(const json& j) {
  return TimeGrid(j.value("t0", 0.0), j.at("tf").get<double>(),
                  j.at("steps").get<int>());
}

inline std::vector<Direction> parse_directions(const json& j, int n,
                                               std::uint64_t default_seed) {
  return sample_sphere(n, j.at("M").get<int>(),
                       sphere_scheme_from_string(j.at("scheme")),
                       j.value("seed", default_seed));
}

}  // namespace chreach::cli
