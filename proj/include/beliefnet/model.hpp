#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "beliefnet/error.hpp"
#include "beliefnet/rng.hpp"

namespace beliefnet {

/// 2m evidence slots: [0, m) are positive statements, slot j + m negates j.
struct EvidencePool {
  std::size_t m = 0;

  std::size_t slots() const noexcept { return 2 * m; }
  std::size_t opposite(std::size_t slot) const noexcept { return slot < m ? slot + m : slot - m; }
  bool is_positive(std::size_t slot) const noexcept { return slot < m; }

  bool operator==(const EvidencePool&) const = default;
};

/// Dense row-major n x 2m table of per-agent evidence values. The tag only
/// keeps understanding weights and confidence levels from being mixed up.
template <typename Tag>
class EvidenceTable {
 public:
  EvidenceTable() = default;
  EvidenceTable(std::size_t agents, std::size_t m, double fill = 0.0)
      : agents_(agents), pool_{m}, data_(agents * 2 * m, fill) {}

  std::size_t agents() const noexcept { return agents_; }
  const EvidencePool& pool() const noexcept { return pool_; }
  std::size_t slots() const noexcept { return pool_.slots(); }

  std::span<double> row(std::size_t agent) {
    return {data_.data() + agent * slots(), slots()};
  }
  std::span<const double> row(std::size_t agent) const {
    return {data_.data() + agent * slots(), slots()};
  }

  double& operator()(std::size_t agent, std::size_t slot) { return data_[agent * slots() + slot]; }
  double operator()(std::size_t agent, std::size_t slot) const {
    return data_[agent * slots() + slot];
  }

  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const EvidenceTable&) const = default;

 private:
  std::size_t agents_ = 0;
  EvidencePool pool_{};
  std::vector<double> data_;
};

struct UnderstandingTag {};
struct ConfidenceTag {};

// u_i(p): each row sums to 1 with exactly one nonzero slot per opposite pair.
using UnderstandingMatrix = EvidenceTable<UnderstandingTag>;
// b_i(p) in [0, 1].
using ConfidenceMatrix = EvidenceTable<ConfidenceTag>;
// c(p) in [0, 1].
using SelfConfidence = std::vector<double>;

inline SelfConfidence uniform_self_confidence(std::size_t n, double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("c", "must lie in [0, 1]");
  return SelfConfidence(n, c);
}

/// Active slot of a pair for one agent: the member with nonzero weight, or
/// -1 when the agent holds neither.
inline int active_slot(const UnderstandingMatrix& u, std::size_t agent, std::size_t pair) {
  const std::size_t m = u.pool().m;
  if (u(agent, pair) != 0.0) return static_cast<int>(pair);
  if (u(agent, pair + m) != 0.0) return static_cast<int>(pair + m);
  return -1;
}

/// Checks the one-active-slot-per-pair and unit row-sum invariants.
inline bool is_valid_understanding(const UnderstandingMatrix& u, double tol = 1e-12) {
  const std::size_t m = u.pool().m;
  for (std::size_t p = 0; p < u.agents(); ++p) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const bool pos = u(p, j) != 0.0;
      const bool neg = u(p, j + m) != 0.0;
      if (pos == neg) return false;
      sum += u(p, j) + u(p, j + m);
    }
    for (double w : u.row(p)) {
      if (w < 0.0 || w > 1.0) return false;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

/// For each agent and pair, the positive slot is made active with probability
/// polarization_index, else its negation. Active slots receive uniform(0,1)
/// weights and each row is normalized to sum 1.
inline UnderstandingMatrix init_understanding(std::size_t n, std::size_t m,
                                              double polarization_index, std::uint64_t seed) {
  if (n < 1) throw ConfigError("n", "must be at least 1");
  if (m < 1) throw ConfigError("m", "must be at least 1");
  if (!(polarization_index >= 0.0 && polarization_index <= 1.0)) {
    throw ConfigError("polarization_index", "must lie in [0, 1]");
  }
  Stream rng(seed, "understanding");
  UnderstandingMatrix u(n, m);
  for (std::size_t p = 0; p < n; ++p) {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t slot = rng.bernoulli(polarization_index) ? j : j + m;
      const double w = rng.uniform_open();
      u(p, slot) = w;
      total += w;
    }
    for (double& w : u.row(p)) w /= total;
  }
  return u;
}

inline ConfidenceMatrix init_confidence_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1) throw ConfigError("n", "must be at least 1");
  if (m < 1) throw ConfigError("m", "must be at least 1");
  Stream rng(seed, "confidence");
  ConfidenceMatrix b(n, m);
  for (std::size_t p = 0; p < n; ++p) {
    for (double& v : b.row(p)) v = rng.uniform();
  }
  return b;
}

/// Group 1 holds confidence a on positive slots and 1-a on negations; group 0
/// the reverse.
inline ConfidenceMatrix init_confidence_polarized(std::size_t m, double a,
                                                  std::span<const int> groups) {
  if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("a", "must lie in [0, 1]");
  if (m < 1) throw ConfigError("m", "must be at least 1");
  ConfidenceMatrix b(groups.size(), m);
  for (std::size_t p = 0; p < groups.size(); ++p) {
    if (groups[p] != 0 && groups[p] != 1) throw DimensionError("group labels must be 0 or 1");
    const double pos = groups[p] == 1 ? a : 1.0 - a;
    for (std::size_t j = 0; j < m; ++j) {
      b(p, j) = pos;
      b(p, j + m) = 1.0 - pos;
    }
  }
  return b;
}

/// Half the agents, chosen uniformly at random, get label 1 (n/2 rounded down).
inline std::vector<int> random_groups(std::size_t n, std::uint64_t seed) {
  std::vector<int> g(n, 0);
  for (std::size_t i = 0; i < n / 2; ++i) g[i] = 1;
  Stream rng(seed, "groups");
  for (std::size_t i = n; i > 1; --i) {
    std::swap(g[i - 1], g[rng.below(i)]);
  }
  return g;
}

/// S(p) = sum_i b_i(p) u_i(p).
inline double self_reasoning(std::span<const double> confidence, std::span<const double> understanding) {
  if (confidence.size() != understanding.size()) {
    throw DimensionError("confidence and understanding rows differ in length");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < confidence.size(); ++i) s += confidence[i] * understanding[i];
  return s;
}

}  // namespace beliefnet
