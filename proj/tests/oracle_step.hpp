#pragma once

// Dense, loop-by-loop reference for one synchronous step. Shares only the
// input/output types with the engine; every formula is written out again.

#include <cmath>
#include <cstddef>
#include <vector>

#include "beliefnet/dynamics.hpp"

namespace beliefnet::testing {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const WeightMatrix& w) {
  const std::size_t n = w.size();
  Dense d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = w.weight(i, j);
  return d;
}

inline SimState oracle_step(const SimState& state, const WeightMatrix& weights,
                            const UnderstandingMatrix& understanding, const SelfConfidence& self_conf) {
  const std::size_t n = weights.size();
  const std::size_t m = understanding.pool().m;
  const Dense w = to_dense(weights);

  Dense b(n, std::vector<double>(2 * m));
  Dense u(n, std::vector<double>(2 * m));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t s = 0; s < 2 * m; ++s) {
      b[p][s] = state.confidence(p, s);
      u[p][s] = understanding(p, s);
    }
  }

  Dense nb = b;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t l = k + m;
      if (u[p][k] == 0.0 && u[p][l] == 0.0) continue;

      double weight_in = 0.0;
      double sum_k = 0.0;
      double sum_l = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == p || w[i][p] == 0.0) continue;
        const bool holds_k = u[i][k] != 0.0;
        const bool holds_l = u[i][l] != 0.0;
        if (!holds_k && !holds_l) continue;
        weight_in += w[i][p];
        const double vk = holds_k ? b[i][k] : 1.0 - b[i][l];
        const double vl = holds_k ? 1.0 - b[i][k] : b[i][l];
        sum_k += w[i][p] * vk;
        sum_l += w[i][p] * vl;
      }
      nb[p][k] = (1.0 - weight_in) * b[p][k] + sum_k;
      nb[p][l] = (1.0 - weight_in) * b[p][l] + sum_l;
    }
  }

  SimState out;
  out.step = state.step + 1;
  out.confidence = ConfidenceMatrix(n, m);
  out.beliefs.resize(n);
  out.self_reasoning.resize(n);
  out.pressure.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    double s = 0.0;
    for (std::size_t e = 0; e < 2 * m; ++e) {
      out.confidence(p, e) = nb[p][e];
      s += nb[p][e] * u[p][e];
    }
    double social = 0.0;
    for (std::size_t q = 0; q < n; ++q) social += w[q][p] * state.beliefs[q];
    const double x = self_conf[p] * s + (1.0 - self_conf[p]) * social;
    out.self_reasoning[p] = s;
    out.beliefs[p] = x;
    out.pressure[p] = std::fabs(x - s);
  }
  return out;
}

// Largest absolute difference over every per-agent array and the confidence.
inline double max_deviation(const SimState& a, const SimState& b) {
  double d = 0.0;
  auto cmp = [&](const std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::fabs(x[i] - y[i]));
  };
  cmp(a.beliefs, b.beliefs);
  cmp(a.self_reasoning, b.self_reasoning);
  cmp(a.pressure, b.pressure);
  const auto va = a.confidence.values();
  const auto vb = b.confidence.values();
  for (std::size_t i = 0; i < va.size(); ++i) d = std::max(d, std::fabs(va[i] - vb[i]));
  return d;
}

}  // namespace beliefnet::testing
