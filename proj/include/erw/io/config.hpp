#pragma once

// Flat key-value experiment configuration (a JSON object with scalar values).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "erw/error.hpp"
#include "erw/io/table.hpp"
#include "erw/oracle.hpp"
#include "erw/rmf.hpp"
#include "erw/stats.hpp"
#include "erw/walk.hpp"

namespace erw::io {

enum class Experiment { simulate, exact, moments, hitting, curve, transience, lil, rmf };

inline constexpr std::array<std::pair<Experiment, std::string_view>, 8> kExperimentNames{{
    {Experiment::simulate, "simulate"},
    {Experiment::exact, "exact"},
    {Experiment::moments, "moments"},
    {Experiment::hitting, "hitting"},
    {Experiment::curve, "curve"},
    {Experiment::transience, "transience"},
    {Experiment::lil, "lil"},
    {Experiment::rmf, "rmf"},
}};

inline std::string_view experiment_name(Experiment e) {
  for (const auto& [value, name] : kExperimentNames) {
    if (value == e) {
      return name;
    }
  }
  return "?";
}

struct ExperimentConfig {
  Experiment experiment = Experiment::simulate;
  std::optional<double> p;
  std::optional<double> r;
  std::optional<std::int64_t> M;
  std::optional<std::int64_t> total_steps;
  std::optional<std::int64_t> horizon;
  std::optional<std::vector<std::int64_t>> horizons;
  std::optional<std::int64_t> cap;
  std::optional<std::int64_t> trials;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> x;
  std::optional<double> epsilon;
  std::optional<bool> compare_bound;
  std::optional<SamplingMode> mode;
  std::uint64_t master_seed = 0;
  std::optional<std::string> output_path;

  SamplingMode mode_or_default() const { return mode.value_or(SamplingMode::marginal); }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

struct KeySchema {
  Experiment experiment;
  std::vector<std::string_view> required;
  std::vector<std::string_view> optional;
};

inline const std::vector<KeySchema>& schemas() {
  static const std::vector<KeySchema> table{
      {Experiment::simulate, {"p", "r", "horizon", "trials"}, {"mode"}},
      {Experiment::exact, {"p", "r", "horizon"}, {}},
      {Experiment::moments, {"p", "r", "horizon"}, {}},
      {Experiment::hitting, {"p", "m", "x", "cap", "trials"}, {"compare_bound"}},
      {Experiment::curve, {"p", "r", "horizons", "trials"}, {"mode"}},
      {Experiment::transience, {"p", "r", "horizons", "trials", "epsilon"}, {}},
      {Experiment::lil, {"p", "r", "horizon", "trials"}, {"mode"}},
      {Experiment::rmf, {"M", "p", "total_steps", "trials"}, {"mode"}},
  };
  return table;
}

inline constexpr std::array<std::string_view, 16> kKnownKeys{
    "experiment", "p", "r", "M", "total_steps", "horizon", "horizons", "cap",
    "trials", "m", "x", "epsilon", "compare_bound", "mode", "master_seed", "output_path"};

// Keys every experiment accepts.
inline constexpr std::array<std::string_view, 3> kCommonKeys{"experiment", "master_seed", "output_path"};

[[noreturn]] inline void fail(ConfigError::Kind kind, const std::string& key, const std::string& message) {
  throw ConfigError(kind, key, "config key '" + key + "': " + message);
}

inline double read_real(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number()) {
    fail(ConfigError::Kind::type_mismatch, key, "expected a number");
  }
  return value.get<double>();
}

inline std::int64_t read_integer(const nlohmann::json& value, const std::string& key) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail(ConfigError::Kind::out_of_range, key, "integer too large");
    }
    return value.get<std::int64_t>();
  }
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  fail(ConfigError::Kind::type_mismatch, key, "expected an integer");
}

inline std::vector<std::int64_t> read_horizons(const nlohmann::json& value, const std::string& key) {
  if (!value.is_string()) {
    fail(ConfigError::Kind::type_mismatch, key, "expected a comma-separated string of integers");
  }
  std::vector<std::int64_t> out;
  std::stringstream stream(value.get<std::string>());
  std::string item;
  while (std::getline(stream, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::size_t used = 0;
    std::int64_t parsed = 0;
    try {
      parsed = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (item.empty() || used != item.size()) {
      fail(ConfigError::Kind::type_mismatch, key, "'" + item + "' is not an integer");
    }
    out.push_back(parsed);
  }
  if (out.empty()) {
    fail(ConfigError::Kind::out_of_range, key, "needs at least one horizon");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1 || (i > 0 && out[i] <= out[i - 1])) {
      fail(ConfigError::Kind::out_of_range, key, "horizons must be positive and strictly increasing");
    }
  }
  return out;
}

inline std::string horizons_text(const std::vector<std::int64_t>& horizons) {
  std::string text;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    text += (i ? "," : "") + std::to_string(horizons[i]);
  }
  return text;
}

inline void require_unit_interval(double value, const std::string& key) {
  if (!(value >= 0.0 && value <= 1.0)) {
    fail(ConfigError::Kind::out_of_range, key, "must lie in [0, 1]");
  }
}

inline void require_at_least(std::int64_t value, std::int64_t low, const std::string& key) {
  if (value < low) {
    fail(ConfigError::Kind::out_of_range, key, "must be >= " + std::to_string(low));
  }
}

}  // namespace detail

/// Model preconditions that do not depend on document syntax. Throws
/// DomainError or ResourceError.
inline void validate_preconditions(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::exact:
      if (*config.horizon > kMaxOracleHorizon) {
        throw ResourceError("exact enumeration supports horizon <= " + std::to_string(kMaxOracleHorizon));
      }
      break;
    case Experiment::hitting:
      require_hitting_start(*config.m, *config.x, *config.cap);
      if (config.compare_bound.value_or(false) && !(*config.p < 1.0 / 6.0)) {
        throw DomainError("bound comparison requested but the positive-recurrence bound needs p < 1/6");
      }
      break;
    case Experiment::transience:
      if (!(*config.p > 0.75)) {
        throw DomainError("transience diagnostic requires p > 3/4");
      }
      break;
    case Experiment::rmf:
      RmfParams(*config.M, *config.p, *config.total_steps);
      break;
    default:
      break;
  }
}

inline ExperimentConfig parse_config(std::string_view text) {
  using detail::fail;
  using Kind = ConfigError::Kind;
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(Kind::malformed, "", std::string("malformed config document: ") + e.what());
  }
  if (!document.is_object()) {
    throw ConfigError(Kind::malformed, "", "config document must be a JSON object");
  }
  for (const auto& [key, value] : document.items()) {
    if (std::find(detail::kKnownKeys.begin(), detail::kKnownKeys.end(), key) == detail::kKnownKeys.end()) {
      fail(Kind::unknown_key, key, "unknown key");
    }
    if (value.is_object() || value.is_array() || value.is_null()) {
      fail(Kind::type_mismatch, key, "values must be scalars");
    }
  }

  if (!document.contains("experiment")) {
    fail(Kind::missing_key, "experiment", "required key is missing");
  }
  const auto& experiment_value = document.at("experiment");
  if (!experiment_value.is_string()) {
    fail(Kind::type_mismatch, "experiment", "expected a string");
  }
  ExperimentConfig config;
  const auto name = experiment_value.get<std::string>();
  const auto found = std::find_if(kExperimentNames.begin(), kExperimentNames.end(),
                                  [&](const auto& entry) { return entry.second == name; });
  if (found == kExperimentNames.end()) {
    fail(Kind::out_of_range, "experiment", "unknown experiment '" + name + "'");
  }
  config.experiment = found->first;

  const auto& schema = *std::find_if(detail::schemas().begin(), detail::schemas().end(),
                                     [&](const auto& s) { return s.experiment == config.experiment; });
  const auto listed = [](const auto& keys, std::string_view key) {
    return std::find(keys.begin(), keys.end(), key) != keys.end();
  };
  for (const auto& [key, value] : document.items()) {
    if (!listed(detail::kCommonKeys, key) && !listed(schema.required, key) && !listed(schema.optional, key)) {
      fail(Kind::unknown_key, key, "not used by experiment '" + name + "'");
    }
  }
  for (const auto key : schema.required) {
    if (!document.contains(key)) {
      fail(Kind::missing_key, std::string(key), "required by experiment '" + name + "'");
    }
  }

  for (const auto& [key, value] : document.items()) {
    if (key == "p" || key == "r") {
      const double v = detail::read_real(value, key);
      detail::require_unit_interval(v, key);
      (key == "p" ? config.p : config.r) = v;
    } else if (key == "epsilon") {
      const double v = detail::read_real(value, key);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        fail(Kind::out_of_range, key, "must be a finite value >= 0");
      }
      config.epsilon = v;
    } else if (key == "M") {
      config.M = detail::read_integer(value, key);
    } else if (key == "total_steps") {
      config.total_steps = detail::read_integer(value, key);
      detail::require_at_least(*config.total_steps, 1, key);
    } else if (key == "horizon") {
      config.horizon = detail::read_integer(value, key);
      detail::require_at_least(*config.horizon, 1, key);
    } else if (key == "horizons") {
      config.horizons = detail::read_horizons(value, key);
    } else if (key == "cap") {
      config.cap = detail::read_integer(value, key);
      detail::require_at_least(*config.cap, 1, key);
    } else if (key == "trials") {
      config.trials = detail::read_integer(value, key);
      detail::require_at_least(*config.trials, 1, key);
    } else if (key == "m") {
      config.m = detail::read_integer(value, key);
    } else if (key == "x") {
      config.x = detail::read_integer(value, key);
    } else if (key == "compare_bound") {
      if (!value.is_boolean()) {
        fail(Kind::type_mismatch, key, "expected true or false");
      }
      config.compare_bound = value.get<bool>();
    } else if (key == "mode") {
      const std::string mode = value.is_string() ? value.get<std::string>() : "";
      if (mode == "marginal") {
        config.mode = SamplingMode::marginal;
      } else if (mode == "history") {
        config.mode = SamplingMode::history;
      } else {
        fail(Kind::type_mismatch, key, "expected \"marginal\" or \"history\"");
      }
    } else if (key == "master_seed") {
      if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
        fail(Kind::type_mismatch, key, "expected an unsigned 64-bit integer");
      }
      config.master_seed = value.get<std::uint64_t>();
    } else if (key == "output_path") {
      if (!value.is_string()) {
        fail(Kind::type_mismatch, key, "expected a string");
      }
      config.output_path = value.get<std::string>();
    }
  }

  validate_preconditions(config);
  return config;
}

/// Config as ordered key/value entries (document order is fixed).
inline Entries config_entries(const ExperimentConfig& config) {
  Entries out;
  out.emplace_back("experiment", std::string(experiment_name(config.experiment)));
  const auto put = [&](const char* key, const auto& value) {
    if (value) {
      out.emplace_back(key, Cell(*value));
    }
  };
  put("p", config.p);
  put("r", config.r);
  put("M", config.M);
  put("total_steps", config.total_steps);
  put("horizon", config.horizon);
  if (config.horizons) {
    out.emplace_back("horizons", detail::horizons_text(*config.horizons));
  }
  put("cap", config.cap);
  put("trials", config.trials);
  put("m", config.m);
  put("x", config.x);
  put("epsilon", config.epsilon);
  put("compare_bound", config.compare_bound);
  if (config.mode) {
    out.emplace_back("mode", std::string(*config.mode == SamplingMode::marginal ? "marginal" : "history"));
  }
  out.emplace_back("master_seed", config.master_seed);
  put("output_path", config.output_path);
  return out;
}

inline std::string config_to_json(const ExperimentConfig& config) {
  return detail::entries_json(config_entries(config));
}

}  // namespace erw::io
