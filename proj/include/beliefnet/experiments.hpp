#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "beliefnet/config.hpp"
#include "beliefnet/dynamics.hpp"
#include "beliefnet/graph.hpp"
#include "beliefnet/model.hpp"

namespace beliefnet {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Population standard deviation (divides by n).
inline double belief_std(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

struct HistogramBin {
  double lower;
  std::size_t count;
  bool operator==(const HistogramBin&) const = default;
};

/// Uniform bins over [0, 1]; every bin is right-open except the last.
inline std::vector<HistogramBin> belief_histogram(std::span<const double> xs, std::size_t bins) {
  if (bins < 1) throw ConfigError("bins", "must be at least 1");
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b] = {static_cast<double>(b) / static_cast<double>(bins), 0};
  }
  for (double x : xs) {
    const double scaled = std::clamp(x, 0.0, 1.0) * static_cast<double>(bins);
    const auto idx = std::min(static_cast<std::size_t>(scaled), bins - 1);
    ++out[idx].count;
  }
  return out;
}

/// Aggregates of one trajectory. Pressure statistics run over steps 1..T;
/// step 0 is identically zero.
struct RunStats {
  double final_mean = 0.0;
  double final_std = 0.0;
  double final_min = 0.0;
  double final_max = 0.0;
  double mean_pressure = 0.0;
  double max_pressure = 0.0;
  std::vector<double> std_series;
};

inline RunStats summarize(const Trajectory& traj) {
  RunStats st;
  if (traj.empty()) return st;
  const auto& last = traj.back().beliefs;
  st.final_mean = mean(last);
  st.final_std = belief_std(last);
  const auto [lo, hi] = std::minmax_element(last.begin(), last.end());
  st.final_min = lo == last.end() ? 0.0 : *lo;
  st.final_max = hi == last.end() ? 0.0 : *hi;
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& s : traj) {
    st.std_series.push_back(belief_std(s.beliefs));
    for (double p : s.pressure) {
      st.max_pressure = std::max(st.max_pressure, p);
      if (s.step > 0) {
        total += p;
        ++count;
      }
    }
  }
  st.mean_pressure = count ? total / static_cast<double>(count) : 0.0;
  return st;
}

/// Everything produced by one configured run.
struct RunOutput {
  SimConfig config;
  Graph graph;
  WeightMatrix weights;
  UnderstandingMatrix understanding;
  Trajectory trajectory;
  RunStats stats;
};

inline Graph build_network(const SimConfig& cfg) {
  if (cfg.network == NetworkKind::Communities) {
    return generate_two_community(cfg.n, cfg.k_in, cfg.k_out, cfg.seed);
  }
  Graph g = generate_er(cfg.n, cfg.k, cfg.seed);
  if (cfg.confidence_mode == ConfidenceMode::Polarized) {
    // Polarized groups scattered across the single network.
    auto edges = std::vector<Edge>(g.edges().begin(), g.edges().end());
    return Graph(cfg.n, std::move(edges), random_groups(cfg.n, cfg.seed));
  }
  return g;
}

inline RunOutput run_config(const SimConfig& cfg) {
  validate(cfg);
  RunOutput out;
  out.config = cfg;
  out.graph = build_network(cfg);
  out.weights = sinkhorn_normalize(out.graph, cfg.add_self_loops, cfg.sinkhorn_tol,
                                   static_cast<int>(cfg.sinkhorn_max_iter));
  out.understanding = init_understanding(cfg.n, cfg.m, cfg.polarization_index, cfg.seed);
  const ConfidenceMatrix b0 = cfg.confidence_mode == ConfidenceMode::Polarized
                                  ? init_confidence_polarized(cfg.m, cfg.a, out.graph.groups())
                                  : init_confidence_random(cfg.n, cfg.m, cfg.seed);
  out.trajectory = run_simulation(out.weights, out.understanding, b0,
                                  uniform_self_confidence(cfg.n, cfg.c), cfg.steps);
  out.stats = summarize(out.trajectory);
  return out;
}

// ---------------------------------------------------------------------------
// Trials

enum class TrialKind { RandomGiant, PolarizedCommunities, PolarizedGiant };

inline std::string_view to_string(TrialKind k) {
  switch (k) {
    case TrialKind::RandomGiant: return "random_giant";
    case TrialKind::PolarizedCommunities: return "polarized_communities";
    case TrialKind::PolarizedGiant: return "polarized_giant";
  }
  return "";
}

inline TrialKind parse_trial_kind(std::string_view s) {
  if (s == "random_giant") return TrialKind::RandomGiant;
  if (s == "polarized_communities") return TrialKind::PolarizedCommunities;
  if (s == "polarized_giant") return TrialKind::PolarizedGiant;
  throw ConfigError("trial", "unknown trial kind \"" + std::string(s) +
                                 "\" (expected random_giant, polarized_communities or polarized_giant)");
}

/// Keys fixed by a trial kind, applied on top of a base document.
inline nlohmann::json trial_preset(TrialKind kind) {
  switch (kind) {
    case TrialKind::RandomGiant:
      return {{"network", "giant"}, {"polarization_index", 0.5}, {"confidence_mode", "random"}};
    case TrialKind::PolarizedCommunities:
      return {{"network", "communities"}, {"polarization_index", 0.8},
              {"confidence_mode", "polarized"}, {"a", 0.8}};
    case TrialKind::PolarizedGiant:
      return {{"network", "giant"}, {"polarization_index", 0.8},
              {"confidence_mode", "polarized"}, {"a", 0.8}};
  }
  return nlohmann::json::object();
}

/// Config for a trial: base document, then the trial preset, then overrides.
inline SimConfig trial_config(TrialKind kind, const nlohmann::json& base = nlohmann::json::object(),
                              const nlohmann::json& overrides = nlohmann::json::object()) {
  nlohmann::json doc = base.is_null() ? nlohmann::json::object() : base;
  doc.update(trial_preset(kind));
  doc.update(overrides);
  return config_from_json(doc);
}

inline RunOutput run_trial(TrialKind kind, const nlohmann::json& overrides, std::uint64_t seed) {
  nlohmann::json o = overrides.is_null() ? nlohmann::json::object() : overrides;
  o["seed"] = seed;
  return run_config(trial_config(kind, nlohmann::json::object(), o));
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepParameter { Connectivity, Population, PolarizationIndex, EvidenceCount };

inline std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Connectivity: return "connectivity";
    case SweepParameter::Population: return "population";
    case SweepParameter::PolarizationIndex: return "polarization_index";
    case SweepParameter::EvidenceCount: return "evidence_count";
  }
  return "";
}

inline SweepParameter parse_sweep_parameter(std::string_view s) {
  if (s == "connectivity") return SweepParameter::Connectivity;
  if (s == "population") return SweepParameter::Population;
  if (s == "polarization_index" || s == "polarization") return SweepParameter::PolarizationIndex;
  if (s == "evidence_count") return SweepParameter::EvidenceCount;
  throw ConfigError("parameter", "unknown sweep parameter \"" + std::string(s) +
                                     "\" (expected connectivity, population, "
                                     "polarization_index or evidence_count)");
}

struct SweepResult {
  std::string parameter;
  double value = 0.0;
  double c = 0.0;
  std::uint64_t seed = 0;
  double final_std = 0.0;
  double final_mean = 0.0;
  double mean_pressure = 0.0;
  double max_pressure = 0.0;
};

/// The config of one sweep point: base with the swept field, c and seed set.
inline SimConfig sweep_point(SweepParameter param, double value, double c, std::uint64_t seed,
                             SimConfig base) {
  const std::string field(to_string(param));
  auto as_count = [&](double v) -> std::uint64_t {
    if (!(v >= 1.0) || std::floor(v) != v) throw ConfigError(field, "sweep value must be a positive integer");
    return static_cast<std::uint64_t>(v);
  };
  switch (param) {
    case SweepParameter::Connectivity:
      if (base.network == NetworkKind::Communities) base.k_in = value;
      else base.k = value;
      break;
    case SweepParameter::Population: base.n = as_count(value); break;
    case SweepParameter::PolarizationIndex:
      base.polarization_index = value;
      base.confidence_mode = ConfidenceMode::Polarized;
      break;
    case SweepParameter::EvidenceCount: base.m = as_count(value); break;
  }
  base.c = c;
  base.seed = seed;
  validate(base);
  return base;
}

/// Cartesian product value x c x seed, results ordered by (value, c, seed).
/// The optional callback sees each result as it completes.
inline std::vector<SweepResult> sweep(SweepParameter param, std::vector<double> values,
                                      std::vector<double> c_levels, std::vector<std::uint64_t> seeds,
                                      const SimConfig& base,
                                      const std::function<void(const SweepResult&)>& on_result = {}) {
  if (values.empty()) throw ConfigError("values", "sweep needs at least one value");
  if (c_levels.empty()) throw ConfigError("c", "sweep needs at least one self-confidence level");
  if (seeds.empty()) throw ConfigError("seeds", "sweep needs at least one seed");
  std::sort(values.begin(), values.end());
  std::sort(c_levels.begin(), c_levels.end());
  std::sort(seeds.begin(), seeds.end());
  // Check every point up front so a bad value fails before any run.
  for (double v : values) {
    for (double c : c_levels) sweep_point(param, v, c, seeds.front(), base);
  }

  std::vector<SweepResult> results;
  results.reserve(values.size() * c_levels.size() * seeds.size());
  for (double v : values) {
    for (double c : c_levels) {
      for (std::uint64_t s : seeds) {
        const auto run = run_config(sweep_point(param, v, c, s, base));
        SweepResult r{std::string(to_string(param)), v, c, s, run.stats.final_std,
                      run.stats.final_mean, run.stats.mean_pressure, run.stats.max_pressure};
        if (on_result) on_result(r);
        results.push_back(std::move(r));
      }
    }
  }
  return results;
}

/// Seed-average of final_std for each (value, c) in result order.
struct CurvePoint {
  double value;
  double c;
  double mean_std;
  double sem_std;  // standard error over seeds
};

inline std::vector<CurvePoint> seed_average(std::span<const SweepResult> results) {
  std::vector<CurvePoint> out;
  std::size_t i = 0;
  while (i < results.size()) {
    std::size_t j = i;
    std::vector<double> stds;
    while (j < results.size() && results[j].value == results[i].value && results[j].c == results[i].c) {
      stds.push_back(results[j].final_std);
      ++j;
    }
    const double mu = mean(stds);
    double sem = 0.0;
    if (stds.size() > 1) {
      double ss = 0.0;
      for (double s : stds) ss += (s - mu) * (s - mu);
      sem = std::sqrt(ss / static_cast<double>(stds.size() - 1)) / std::sqrt(static_cast<double>(stds.size()));
    }
    out.push_back({results[i].value, results[i].c, mu, sem});
    i = j;
  }
  return out;
}

}  // namespace beliefnet
