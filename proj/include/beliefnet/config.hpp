#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "beliefnet/error.hpp"

namespace beliefnet {

enum class NetworkKind { Giant, Communities };
enum class ConfidenceMode { Random, Polarized };

inline std::string_view to_string(NetworkKind k) {
  return k == NetworkKind::Giant ? "giant" : "communities";
}
inline std::string_view to_string(ConfidenceMode m) {
  return m == ConfidenceMode::Random ? "random" : "polarized";
}

/// Every model and run parameter. Defaults are the standard experiment setup.
struct SimConfig {
  std::uint64_t n = 400;
  std::uint64_t m = 5;
  double k = 10.0;      // mean degree of the giant-component network
  double k_in = 10.0;   // mean intra-community degree
  double k_out = 0.5;   // bridge density, pairs across communities linked w.p. k_out/n
  NetworkKind network = NetworkKind::Giant;
  double polarization_index = 0.5;
  ConfidenceMode confidence_mode = ConfidenceMode::Random;
  double a = 0.8;
  double c = 0.5;
  std::uint64_t steps = 40;
  std::uint64_t seed = 1;
  bool add_self_loops = true;
  double sinkhorn_tol = 1e-9;
  std::uint64_t sinkhorn_max_iter = 1000;
  bool record_confidence = false;

  bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError naming the first field out of range.
inline void validate(const SimConfig& cfg) {
  auto unit = [](const char* field, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(field, "must lie in [0, 1]");
  };
  if (cfg.n < 1) throw ConfigError("n", "must be at least 1");
  if (cfg.m < 1) throw ConfigError("m", "must be at least 1");
  const double n = static_cast<double>(cfg.n);
  if (cfg.network == NetworkKind::Giant) {
    if (!(cfg.k > 0.0 && cfg.k < n)) throw ConfigError("k", "must satisfy 0 < k < n");
  } else {
    if (cfg.n < 2 || cfg.n % 2 != 0) {
      throw ConfigError("n", "must be a positive even number for the communities network");
    }
    if (!(cfg.k_in > 0.0 && cfg.k_in < n / 2)) throw ConfigError("k_in", "must satisfy 0 < k_in < n/2");
    if (!(cfg.k_out >= 0.0 && cfg.k_out < n)) throw ConfigError("k_out", "must satisfy 0 <= k_out < n");
  }
  unit("polarization_index", cfg.polarization_index);
  unit("a", cfg.a);
  unit("c", cfg.c);
  if (cfg.steps < 1) throw ConfigError("steps", "must be at least 1");
  if (!(cfg.sinkhorn_tol > 0.0) || !std::isfinite(cfg.sinkhorn_tol)) {
    throw ConfigError("sinkhorn_tol", "must be a positive number");
  }
  if (cfg.sinkhorn_max_iter < 1 || cfg.sinkhorn_max_iter > 100'000'000) {
    throw ConfigError("sinkhorn_max_iter", "must lie in [1, 1e8]");
  }
}

inline nlohmann::ordered_json to_json(const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["k"] = cfg.k;
  j["k_in"] = cfg.k_in;
  j["k_out"] = cfg.k_out;
  j["network"] = to_string(cfg.network);
  j["polarization_index"] = cfg.polarization_index;
  j["confidence_mode"] = to_string(cfg.confidence_mode);
  j["a"] = cfg.a;
  j["c"] = cfg.c;
  j["steps"] = cfg.steps;
  j["seed"] = cfg.seed;
  j["add_self_loops"] = cfg.add_self_loops;
  j["sinkhorn_tol"] = cfg.sinkhorn_tol;
  j["sinkhorn_max_iter"] = cfg.sinkhorn_max_iter;
  j["record_confidence"] = cfg.record_confidence;
  return j;
}

inline std::string serialize_config(const SimConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

namespace detail {

template <typename Json>
std::uint64_t get_count(const Json& v, const char* field) {
  if (v.is_number_unsigned()) return v.template get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto i = v.template get<std::int64_t>();
    if (i < 0) throw ConfigError(field, "must be nonnegative, got " + v.dump());
    return static_cast<std::uint64_t>(i);
  }
  if (v.is_number_float()) {
    const double d = v.template get<double>();
    if (d < 0.0) throw ConfigError(field, "must be nonnegative, got " + v.dump());
    throw ConfigError(field, "must be an integer, got " + v.dump());
  }
  throw ConfigError(field, "must be an integer");
}

template <typename Json>
double get_real(const Json& v, const char* field) {
  if (!v.is_number()) throw ConfigError(field, "must be a number");
  return v.template get<double>();
}

template <typename Json>
bool get_bool(const Json& v, const char* field) {
  if (!v.is_boolean()) throw ConfigError(field, "must be true or false");
  return v.template get<bool>();
}

template <typename Json>
std::string get_string(const Json& v, const char* field) {
  if (!v.is_string()) throw ConfigError(field, "must be a string");
  return v.template get<std::string>();
}

}  // namespace detail

/// Builds a validated config from a JSON object. Missing keys take defaults;
/// unknown keys are rejected.
template <typename Json>
SimConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");
  SimConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    if (key == "n") cfg.n = detail::get_count(v, "n");
    else if (key == "m") cfg.m = detail::get_count(v, "m");
    else if (key == "k") cfg.k = detail::get_real(v, "k");
    else if (key == "k_in") cfg.k_in = detail::get_real(v, "k_in");
    else if (key == "k_out") cfg.k_out = detail::get_real(v, "k_out");
    else if (key == "network") {
      const auto s = detail::get_string(v, "network");
      if (s == "giant") cfg.network = NetworkKind::Giant;
      else if (s == "communities") cfg.network = NetworkKind::Communities;
      else throw ConfigError("network", "must be \"giant\" or \"communities\", got \"" + s + "\"");
    } else if (key == "polarization_index") {
      cfg.polarization_index = detail::get_real(v, "polarization_index");
    } else if (key == "confidence_mode") {
      const auto s = detail::get_string(v, "confidence_mode");
      if (s == "random") cfg.confidence_mode = ConfidenceMode::Random;
      else if (s == "polarized") cfg.confidence_mode = ConfidenceMode::Polarized;
      else throw ConfigError("confidence_mode", "must be \"random\" or \"polarized\", got \"" + s + "\"");
    } else if (key == "a") cfg.a = detail::get_real(v, "a");
    else if (key == "c") cfg.c = detail::get_real(v, "c");
    else if (key == "steps") cfg.steps = detail::get_count(v, "steps");
    else if (key == "seed") cfg.seed = detail::get_count(v, "seed");
    else if (key == "add_self_loops") cfg.add_self_loops = detail::get_bool(v, "add_self_loops");
    else if (key == "sinkhorn_tol") cfg.sinkhorn_tol = detail::get_real(v, "sinkhorn_tol");
    else if (key == "sinkhorn_max_iter") cfg.sinkhorn_max_iter = detail::get_count(v, "sinkhorn_max_iter");
    else if (key == "record_confidence") cfg.record_confidence = detail::get_bool(v, "record_confidence");
    else throw ConfigError(key, "unknown configuration key");
  }
  validate(cfg);
  return cfg;
}

inline nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
}

inline SimConfig parse_config(std::string_view text) { return config_from_json(parse_json_text(text)); }

}  // namespace beliefnet
