#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beliefnet/error.hpp"
#include "beliefnet/rng.hpp"

namespace beliefnet {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph with a 0/1 community label per node.
///
/// Edges are stored once as (lo, hi) with lo < hi, sorted lexicographically.
class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes an edge list. Each pair may be given in either
  /// orientation; duplicates, self-pairs and out-of-range endpoints throw.
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<int> group = {})
      : n_(n), edges_(std::move(edges)), group_(std::move(group)) {
    if (group_.empty()) group_.assign(n_, 0);
    if (group_.size() != n_) throw DimensionError("group labels do not match node count");
    for (int g : group_) {
      if (g != 0 && g != 1) throw DimensionError("group labels must be 0 or 1");
    }
    for (auto& [a, b] : edges_) {
      if (a >= n_ || b >= n_) throw DimensionError("edge endpoint out of range");
      if (a == b) throw DimensionError("self-pair in edge list");
      if (a > b) std::swap(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw DimensionError("duplicate edge in edge list");
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const int> groups() const noexcept { return group_; }
  int group(std::size_t v) const { return group_.at(v); }

  // Neighbor lists, each sorted ascending.
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n_);
    for (const auto& [a, b] : edges_) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(n_, 0);
    for (const auto& [a, b] : edges_) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> group_;
};

/// Sparse symmetric nonnegative matrix. Rows hold (column, weight) entries
/// sorted by column; only strictly positive weights are stored.
class WeightMatrix {
 public:
  struct Entry {
    std::size_t col;
    double weight;
    bool operator==(const Entry&) const = default;
  };

  WeightMatrix() = default;
  explicit WeightMatrix(std::vector<std::vector<Entry>> rows) : rows_(std::move(rows)) {}

  std::size_t size() const noexcept { return rows_.size(); }
  std::span<const Entry> row(std::size_t i) const { return rows_.at(i); }

  double weight(std::size_t i, std::size_t j) const {
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, std::size_t c) { return e.col < c; });
    return (it != r.end() && it->col == j) ? it->weight : 0.0;
  }

  double row_sum(std::size_t i) const {
    double s = 0.0;
    for (const auto& e : rows_.at(i)) s += e.weight;
    return s;
  }

  std::vector<double> column_sums() const {
    std::vector<double> s(size(), 0.0);
    for (const auto& r : rows_) {
      for (const auto& e : r) s[e.col] += e.weight;
    }
    return s;
  }

  // max |sum - 1| over every row and column.
  double stochastic_error() const {
    double err = 0.0;
    for (std::size_t i = 0; i < size(); ++i) err = std::max(err, std::abs(row_sum(i) - 1.0));
    for (double s : column_sums()) err = std::max(err, std::abs(s - 1.0));
    return err;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& e : rows_[i]) {
        if (weight(e.col, i) != e.weight) return false;
      }
    }
    return true;
  }

  bool operator==(const WeightMatrix&) const = default;

 private:
  std::vector<std::vector<Entry>> rows_;
};

/// Erdős–Rényi graph: every unordered pair is an edge with probability k/n.
inline Graph generate_er(std::size_t n, double k, std::uint64_t seed) {
  if (n < 1) throw ConfigError("n", "must be at least 1");
  if (!(k > 0.0) || !(k < static_cast<double>(n)) || !std::isfinite(k)) {
    throw ConfigError("k", "must satisfy 0 < k < n");
  }
  const double p = k / static_cast<double>(n);
  Stream rng(seed, "graph");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

/// Two equal ER blocks, [0, n/2) labelled 0 and [n/2, n) labelled 1, with
/// intra-block edge probability k_in/(n/2) and sparse bridges at k_out/n.
inline Graph generate_two_community(std::size_t n, double k_in, double k_out,
                                    std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw ConfigError("n", "must be a positive even number");
  const double half = static_cast<double>(n / 2);
  if (!(k_in > 0.0) || !(k_in < half) || !std::isfinite(k_in)) {
    throw ConfigError("k_in", "must satisfy 0 < k_in < n/2");
  }
  if (!(k_out >= 0.0) || !(k_out < static_cast<double>(n))) {
    throw ConfigError("k_out", "must satisfy 0 <= k_out < n");
  }
  const double p_in = k_in / half;
  const double p_out = k_out / static_cast<double>(n);
  std::vector<int> group(n);
  for (std::size_t v = 0; v < n; ++v) group[v] = v < n / 2 ? 0 : 1;

  Stream rng(seed, "graph");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = group[i] == group[j] ? p_in : p_out;
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges), std::move(group));
}

/// Maximal connected node sets, each sorted ascending, ordered by descending
/// size then by smallest member.
inline std::vector<std::vector<std::size_t>> connected_components(const Graph& g) {
  const auto adj = g.adjacency();
  std::vector<bool> seen(g.size(), false);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::size_t v : adj[comp[head]]) {
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return comps;
}

inline double giant_component_fraction(const Graph& g) {
  if (g.size() == 0) return 0.0;
  return static_cast<double>(connected_components(g).front().size()) /
         static_cast<double>(g.size());
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Symmetric Sinkhorn-Knopp scaling of the 0/1 adjacency (plus identity when
/// add_self_loops) to a doubly stochastic W = D A D.
///
/// Nodes with no edge and no self-loop get w_ii = 1 and are left out of the
/// iteration. The diagonal is updated as d_i <- d_i / sqrt(r_i), r_i being the
/// current row sum, until every |r_i - 1| <= tol. Throws NotScalableError when
/// that does not happen within max_iter sweeps, which is the case exactly when
/// A lacks total support (e.g. a path on three nodes with no self-loops).
inline WeightMatrix sinkhorn_normalize(const Graph& g, bool add_self_loops = true,
                                       double tol = 1e-9, int max_iter = 1000) {
  const std::size_t n = g.size();
  if (n < 1) throw DimensionError("cannot normalize an empty graph");
  if (!(tol > 0.0)) throw ConfigError("sinkhorn_tol", "must be positive");
  if (max_iter < 1) throw ConfigError("sinkhorn_max_iter", "must be positive");

  // Pattern of A, diagonal included when requested; each row sorted.
  auto pattern = g.adjacency();
  std::vector<bool> isolated(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (add_self_loops) {
      pattern[i].insert(std::lower_bound(pattern[i].begin(), pattern[i].end(), i), i);
    } else if (pattern[i].empty()) {
      isolated[i] = true;
    }
  }

  std::vector<double> d(n, 1.0);
  std::vector<double> r(n, 1.0);
  auto residual = [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (isolated[i]) continue;
      double s = 0.0;
      for (std::size_t j : pattern[i]) s += d[j];
      r[i] = d[i] * s;
      worst = std::max(worst, std::abs(r[i] - 1.0));
    }
    return worst;
  };

  double worst = residual();
  int iter = 0;
  while (worst > tol) {
    if (iter == max_iter) {
      throw NotScalableError("graph (n=" + std::to_string(n) +
                             ", edges=" + std::to_string(g.edges().size()) +
                             ") is not scalable to doubly stochastic form: residual " +
                             std::to_string(worst) + " after " + std::to_string(max_iter) +
                             " iterations");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!isolated[i]) d[i] /= std::sqrt(r[i]);
    }
    worst = residual();
    ++iter;
  }

  std::vector<std::vector<WeightMatrix::Entry>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (isolated[i]) {
      rows[i].push_back({i, 1.0});
      continue;
    }
    rows[i].reserve(pattern[i].size());
    // d_i * d_j == d_j * d_i bit for bit, so the result is exactly symmetric.
    for (std::size_t j : pattern[i]) rows[i].push_back({j, d[i] * d[j]});
  }
  return WeightMatrix(std::move(rows));
}

}  // namespace beliefnet
