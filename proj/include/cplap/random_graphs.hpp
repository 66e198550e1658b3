#ifndef CPLAP_RANDOM_GRAPHS_HPP
#define CPLAP_RANDOM_GRAPHS_HPP

// Seeded generators for property checks and the oracle-check command.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "cplap/balance.hpp"
#include "cplap/graph.hpp"

namespace cplap::random_graphs {

using rng_type = std::mt19937_64;

namespace detail {

inline double uniform(rng_type& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(rng_type& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(rng_type& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline complex eighth_root(std::size_t k) {
  return std::polar(1.0, static_cast<double>(k) * std::numbers::pi / 4.0);
}

/// Edge list (row, col) containing a spanning arborescence out of a random
/// root plus each remaining ordered pair with probability p.
inline std::vector<std::pair<std::size_t, std::size_t>> support_with_tree(std::size_t n,
                                                                          double p,
                                                                          rng_type& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t parent = order[pick(rng, 0, k - 1)];
    used[order[k]][parent] = true;
    out.emplace_back(order[k], parent);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !used[i][j] && coin(rng, p)) out.emplace_back(i, j);
  return out;
}

}  // namespace detail

/// Essentially nonnegative digraph with a spanning tree: a nonnegative graph
/// with moduli in [0.5, 2], conjugated by a uniformly random gauge.
inline digraph consensus_graph(std::size_t n, rng_type& rng, double extra_edge_p = 0.25) {
  std::vector<complex> zeta(n);
  for (auto& z : zeta) z = std::polar(1.0, detail::uniform(rng, 0.0, 2.0 * std::numbers::pi));
  std::vector<entry> entries;
  for (auto [i, j] : detail::support_with_tree(n, extra_edge_p, rng)) {
    const double w = detail::uniform(rng, 0.5, 2.0);
    entries.push_back({i, j, zeta[i] * w * std::conj(zeta[j])});
  }
  return digraph(n, std::move(entries));
}

/// Arbitrary support, moduli in [0.5, 2] and phases that are multiples of
/// pi/4. About half the graphs are gauge-consistent; in the rest some edges
/// get an extra nontrivial eighth-root phase, so balanced and unbalanced
/// instances are both common and never borderline.
inline digraph mixed_graph(std::size_t n, rng_type& rng) {
  std::vector<complex> zeta(n);
  for (auto& z : zeta) z = detail::eighth_root(detail::pick(rng, 0, 7));
  const double p = detail::coin(rng, 0.5) ? 0.3 : 0.55;
  const bool perturb = detail::coin(rng, 0.5);
  const bool with_tree = detail::coin(rng, 0.7);
  std::vector<std::pair<std::size_t, std::size_t>> support;
  if (with_tree) {
    support = detail::support_with_tree(n, p, rng);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && detail::coin(rng, p)) support.emplace_back(i, j);
  }
  std::vector<entry> entries;
  for (auto [i, j] : support) {
    complex w = zeta[i] * detail::uniform(rng, 0.5, 2.0) * std::conj(zeta[j]);
    if (perturb && detail::coin(rng, 0.3)) w *= detail::eighth_root(detail::pick(rng, 1, 7));
    entries.push_back({i, j, w});
  }
  return digraph(n, std::move(entries));
}

/// Connected Hermitian graph (a_ji = conj(a_ij)) with continuous random
/// phases and at least one edge beyond a spanning tree, so it has a cycle.
inline digraph hermitian_connected(std::size_t n, rng_type& rng, double extra_edge_p = 0.3) {
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t other = order[detail::pick(rng, 0, k - 1)];
    used[order[k]][other] = used[other][order[k]] = true;
    pairs.emplace_back(order[k], other);
  }
  const std::size_t tree_size = pairs.size();
  while (pairs.size() == tree_size) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!used[i][j] && detail::coin(rng, extra_edge_p)) {
          used[i][j] = used[j][i] = true;
          pairs.emplace_back(i, j);
        }
    if (n < 3) break;
  }
  std::vector<entry> entries;
  for (auto [i, j] : pairs) {
    const complex w = std::polar(detail::uniform(rng, 0.5, 2.0),
                                 detail::uniform(rng, 0.0, 2.0 * std::numbers::pi));
    entries.push_back({i, j, w});
    entries.push_back({j, i, std::conj(w)});
  }
  return digraph(n, std::move(entries));
}

/// Hermitian, connected and not essentially nonnegative (resampled until the
/// switching search reports a conflict). Requires n >= 3.
inline digraph hermitian_unbalanced(std::size_t n, rng_type& rng) {
  for (;;) {
    auto g = hermitian_connected(n, rng);
    if (!find_switching_vector(g).has_witness()) return g;
  }
}

}  // namespace cplap::random_graphs

#endif  // CPLAP_RANDOM_GRAPHS_HPP
