#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "beliefnet/error.hpp"
#include "beliefnet/graph.hpp"
#include "beliefnet/model.hpp"

namespace beliefnet {

/// Everything that changes from one step to the next.
struct SimState {
  std::size_t step = 0;
  ConfidenceMatrix confidence;
  std::vector<double> beliefs;         // X(p)
  std::vector<double> self_reasoning;  // S(p)
  std::vector<double> pressure;        // P(p) = |X(p) - S(p)|

  std::size_t agents() const noexcept { return beliefs.size(); }
  bool operator==(const SimState&) const = default;
};

using Trajectory = std::vector<SimState>;

struct BeliefUpdate {
  std::vector<double> beliefs;
  std::vector<double> self_reasoning;
  std::vector<double> pressure;
};

namespace detail {

inline double unit_clamp(double x) { return std::clamp(x, 0.0, 1.0); }

inline void check_dimensions(const WeightMatrix& weights, const UnderstandingMatrix& understanding,
                             const ConfidenceMatrix& confidence) {
  const std::size_t n = weights.size();
  if (understanding.agents() != n || confidence.agents() != n) {
    throw DimensionError("agent count differs between weights, understanding and confidence");
  }
  if (understanding.pool().m != confidence.pool().m) {
    throw DimensionError("understanding and confidence use different evidence pools");
  }
}

inline void check_self_confidence(const WeightMatrix& weights, const SelfConfidence& c) {
  if (c.size() != weights.size()) throw DimensionError("self-confidence length differs from n");
}

}  // namespace detail

/// Step 0: beliefs equal self-reasoning, so pressure starts at exactly 0.
inline SimState initial_state(const WeightMatrix& weights, const UnderstandingMatrix& understanding,
                              const ConfidenceMatrix& confidence0, const SelfConfidence& self_conf) {
  detail::check_dimensions(weights, understanding, confidence0);
  detail::check_self_confidence(weights, self_conf);
  const std::size_t n = weights.size();
  SimState s;
  s.confidence = confidence0;
  s.self_reasoning.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    s.self_reasoning[p] = detail::unit_clamp(self_reasoning(confidence0.row(p), understanding.row(p)));
  }
  s.beliefs = s.self_reasoning;
  s.pressure.assign(n, 0.0);
  return s;
}

/// One synchronous round of evidence exchange.
///
/// For every receiver p and pair (k, l = k + m) that p holds at all, each
/// neighbor i (self-weight excluded) sends the member it holds active. A value
/// sent on the opposite member arrives as its complement. The receiver keeps
/// weight 1 - sum_i w_ip on its own value:
///
///   b'_k(p) = (1 - sum_i w_ip) b_k(p) + sum_i w_ip v_k(i)
///   v_k(i)  = b_k(i) if i holds k, else 1 - b_l(i)
///
/// and symmetrically for l. Neighbors holding neither member send nothing and
/// their weight stays with the receiver.
inline ConfidenceMatrix step_evidence(const SimState& state, const WeightMatrix& weights,
                                      const UnderstandingMatrix& understanding) {
  detail::check_dimensions(weights, understanding, state.confidence);
  const std::size_t n = weights.size();
  const std::size_t m = understanding.pool().m;
  const ConfidenceMatrix& b = state.confidence;

  std::vector<int> active(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) active[i * m + j] = active_slot(understanding, i, j);
  }

  ConfidenceMatrix next = b;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t k = 0; k < m; ++k) {
      if (active[p * m + k] < 0) continue;
      const std::size_t l = k + m;
      double retained = 1.0;
      double in_k = 0.0;
      double in_l = 0.0;
      for (const auto& [i, w] : weights.row(p)) {
        if (i == p) continue;
        const int sent = active[i * m + k];
        if (sent < 0) continue;
        retained -= w;
        if (static_cast<std::size_t>(sent) == k) {
          in_k += w * b(i, k);
          in_l += w * (1.0 - b(i, k));
        } else {
          in_k += w * (1.0 - b(i, l));
          in_l += w * b(i, l);
        }
      }
      next(p, k) = detail::unit_clamp(retained * b(p, k) + in_k);
      next(p, l) = detail::unit_clamp(retained * b(p, l) + in_l);
    }
  }
  return next;
}

/// S' from the new confidence; X' = c S' + (1 - c) sum_k w_kp X(k) over the
/// previous beliefs, self-loop included; P' = |X' - S'|.
inline BeliefUpdate step_beliefs(const SimState& state, const ConfidenceMatrix& new_confidence,
                                 const WeightMatrix& weights, const UnderstandingMatrix& understanding,
                                 const SelfConfidence& self_conf) {
  detail::check_dimensions(weights, understanding, new_confidence);
  detail::check_self_confidence(weights, self_conf);
  const std::size_t n = weights.size();
  if (state.beliefs.size() != n) throw DimensionError("belief vector length differs from n");

  BeliefUpdate out;
  out.beliefs.resize(n);
  out.self_reasoning.resize(n);
  out.pressure.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double s = detail::unit_clamp(self_reasoning(new_confidence.row(p), understanding.row(p)));
    double norm = 0.0;
    for (const auto& [k, w] : weights.row(p)) norm += w * state.beliefs[k];
    const double c = self_conf[p];
    const double x = detail::unit_clamp(c * s + (1.0 - c) * norm);
    out.self_reasoning[p] = s;
    out.beliefs[p] = x;
    out.pressure[p] = std::abs(x - s);
  }
  return out;
}

inline SimState advance(const SimState& state, const WeightMatrix& weights,
                        const UnderstandingMatrix& understanding, const SelfConfidence& self_conf) {
  SimState next;
  next.step = state.step + 1;
  next.confidence = step_evidence(state, weights, understanding);
  auto upd = step_beliefs(state, next.confidence, weights, understanding, self_conf);
  next.beliefs = std::move(upd.beliefs);
  next.self_reasoning = std::move(upd.self_reasoning);
  next.pressure = std::move(upd.pressure);
  return next;
}

/// States 0..steps inclusive.
inline Trajectory run_simulation(const WeightMatrix& weights, const UnderstandingMatrix& understanding,
                                 const ConfidenceMatrix& confidence0, const SelfConfidence& self_conf,
                                 std::size_t steps) {
  if (steps < 1) throw ConfigError("steps", "must be at least 1");
  Trajectory traj;
  traj.reserve(steps + 1);
  traj.push_back(initial_state(weights, understanding, confidence0, self_conf));
  for (std::size_t t = 0; t < steps; ++t) {
    traj.push_back(advance(traj.back(), weights, understanding, self_conf));
  }
  return traj;
}

}  // namespace beliefnet
