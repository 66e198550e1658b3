#ifndef CPLAP_GRAPH_HPP
#define CPLAP_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cplap/error.hpp"

namespace cplap {

using complex = std::complex<double>;

/// Weights with modulus below this are rejected at construction.
inline constexpr double zero_weight_threshold = 1e-15;

/// Largest vertex count accepted by the exponential cycle oracle.
inline constexpr std::size_t cycle_oracle_limit = 12;

/// Default relative phase tolerance for positivity tests on weights and cycles.
inline constexpr double default_phase_tol = 1e-9;

/// Unit phase a/|a| of a nonzero weight.
inline complex phase_of(complex a) { return a / std::abs(a); }

/// True when w is a positive real up to relative tolerance tol.
inline bool is_positive_real(complex w, double tol) {
  return std::abs(w.imag()) <= tol * std::abs(w) && w.real() > 0.0;
}

/// Adjacency entry a_{row,col}; it encodes the directed edge col -> row.
struct entry {
  std::size_t row = 0;
  std::size_t col = 0;
  complex weight;

  friend bool operator==(const entry&, const entry&) = default;
};

/// Complex-weighted digraph on vertices 0..n-1. Immutable once built.
///
/// Entries are kept sorted by (row, col). Every stored weight is finite and
/// nonzero and there are no self-loops.
class digraph {
 public:
  /// Validating constructor.
  digraph(std::size_t n, std::vector<entry> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw error(errc::invalid_config, "vertex count must be positive");
    for (const auto& e : entries_) {
      if (e.row >= n_ || e.col >= n_)
        throw error(errc::index_out_of_range,
                    "entry (" + std::to_string(e.row + 1) + ", " + std::to_string(e.col + 1) +
                        ") outside 1.." + std::to_string(n_));
      if (e.row == e.col) throw error(errc::self_loop, "vertex " + std::to_string(e.row + 1));
      if (!std::isfinite(e.weight.real()) || !std::isfinite(e.weight.imag()))
        throw error(errc::non_finite_weight, "entry (" + std::to_string(e.row + 1) + ", " +
                                                 std::to_string(e.col + 1) + ")");
      if (std::abs(e.weight) < zero_weight_threshold)
        throw error(errc::zero_weight, "entry (" + std::to_string(e.row + 1) + ", " +
                                           std::to_string(e.col + 1) + ")");
    }
    std::sort(entries_.begin(), entries_.end(), by_position);
    for (std::size_t k = 1; k < entries_.size(); ++k) {
      if (entries_[k].row == entries_[k - 1].row && entries_[k].col == entries_[k - 1].col)
        throw error(errc::duplicate_entry, "entry (" + std::to_string(entries_[k].row + 1) + ", " +
                                               std::to_string(entries_[k].col + 1) + ")");
    }
    build_adjacency();
  }

  /// Edgeless graph on n vertices.
  explicit digraph(std::size_t n) : digraph(n, {}) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return entries_.size(); }
  std::span<const entry> entries() const noexcept { return entries_; }

  /// a_{i,j}, or 0 when there is no edge j -> i.
  complex weight(std::size_t i, std::size_t j) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), entry{i, j, {}}, by_position);
    if (it != entries_.end() && it->row == i && it->col == j) return it->weight;
    return {};
  }

  bool has_edge_from_to(std::size_t from, std::size_t to) const {
    return weight(to, from) != complex{};
  }

  /// Vertices i with a_{i,j} != 0, i.e. heads of edges leaving j. Sorted.
  std::span<const std::size_t> successors(std::size_t j) const { return succ_.at(j); }

  /// Vertices j with a_{i,j} != 0, i.e. tails of edges entering i. Sorted.
  std::span<const std::size_t> predecessors(std::size_t i) const { return pred_.at(i); }

  bool is_real_weighted(double tol) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [tol](const entry& e) { return std::abs(e.weight.imag()) <= tol; });
  }

  /// A == A* entrywise, within an absolute tolerance.
  bool is_hermitian(double tol) const {
    return std::all_of(entries_.begin(), entries_.end(), [&](const entry& e) {
      return std::abs(e.weight - std::conj(weight(e.col, e.row))) <= tol;
    });
  }

  friend bool operator==(const digraph& a, const digraph& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  static bool by_position(const entry& a, const entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  }

  void build_adjacency() {
    succ_.assign(n_, {});
    pred_.assign(n_, {});
    for (const auto& e : entries_) {
      succ_[e.col].push_back(e.row);
      pred_[e.row].push_back(e.col);
    }
    for (auto& s : succ_) std::sort(s.begin(), s.end());
  }

  std::size_t n_;
  std::vector<entry> entries_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
};

/// Graph of A_H = (A + A*)/2. Pairs that cancel exactly (up to rounding) are
/// dropped, so the edge set is the nonzero pattern of A_H.
inline digraph hermitian_part(const digraph& g) {
  std::vector<entry> out;
  for (const auto& e : g.entries()) {
    const complex back = g.weight(e.col, e.row);
    // Visit each unordered pair once: from the stored entry, or from the
    // lower position when both directions are present.
    if (back != complex{} && e.col < e.row) continue;
    const complex h = 0.5 * (e.weight + std::conj(back));
    const double scale = 0.5 * (std::abs(e.weight) + std::abs(back));
    if (std::abs(h) < std::max(zero_weight_threshold, 1e-12 * scale)) continue;
    out.push_back({e.row, e.col, h});
    out.push_back({e.col, e.row, std::conj(h)});
  }
  return digraph(g.size(), std::move(out));
}

/// Strongly connected components, numbered in reverse topological order of
/// the condensation (Tarjan): an edge u -> v between different components
/// satisfies component[u] > component[v].
struct scc_decomposition {
  std::vector<std::size_t> component;
  std::size_t count = 0;
};

inline scc_decomposition strongly_connected_components(const digraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  scc_decomposition out;
  out.component.assign(n, 0);
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : g.successors(v)) {
      if (index[w] == unvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        out.component[w] = out.count;
      } while (w != v);
      ++out.count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == unvisited) visit(v);
  return out;
}

struct root_report {
  std::vector<std::size_t> roots;  // sorted
  bool has_spanning_tree = false;
  bool strongly_connected = false;
};

/// Roots are the vertices with a directed path to every other vertex. They
/// exist iff the condensation has a single source component, and then they
/// are exactly that component.
inline root_report find_roots(const digraph& g) {
  const auto scc = strongly_connected_components(g);
  std::vector<bool> has_incoming(scc.count, false);
  for (const auto& e : g.entries()) {
    if (scc.component[e.col] != scc.component[e.row]) has_incoming[scc.component[e.row]] = true;
  }
  root_report r;
  r.strongly_connected = scc.count == 1;
  const auto sources = std::count(has_incoming.begin(), has_incoming.end(), false);
  if (sources == 1) {
    const auto src = static_cast<std::size_t>(
        std::find(has_incoming.begin(), has_incoming.end(), false) - has_incoming.begin());
    for (std::size_t v = 0; v < g.size(); ++v)
      if (scc.component[v] == src) r.roots.push_back(v);
  }
  r.has_spanning_tree = !r.roots.empty();
  return r;
}

/// Directed simple cycle v0 -> v1 -> ... -> v_{k-1} -> v0 with the product of
/// the traversed weights.
struct cycle {
  std::vector<std::size_t> vertices;
  complex weight;
};

/// Every simple directed cycle with at most max_len vertices, each listed from
/// its smallest vertex, in lexicographic order of the vertex sequence.
inline std::vector<cycle> enumerate_simple_cycles(const digraph& g, std::size_t max_len) {
  const std::size_t n = g.size();
  if (n > cycle_oracle_limit)
    throw error(errc::size_limit_exceeded,
                "cycle enumeration supports at most " + std::to_string(cycle_oracle_limit) +
                    " vertices, got " + std::to_string(n));
  std::vector<cycle> out;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);

  std::function<void(std::size_t, std::size_t, complex)> extend = [&](std::size_t start,
                                                                       std::size_t v, complex w) {
    for (std::size_t next : g.successors(v)) {
      if (next < start) continue;
      const complex step = w * g.weight(next, v);
      if (next == start) {
        if (path.size() >= 2) out.push_back({path, step});
        continue;
      }
      if (on_path[next] || path.size() >= max_len) continue;
      path.push_back(next);
      on_path[next] = true;
      extend(start, next, step);
      on_path[next] = false;
      path.pop_back();
    }
  };
  // Successors are sorted and the start is the smallest vertex on the path,
  // so depth-first order is already lexicographic.
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = true;
    extend(s, s, complex{1.0, 0.0});
    on_path[s] = false;
  }
  return out;
}

/// Balanced: every simple directed cycle has a positive real weight.
inline bool is_balanced_by_cycles(const digraph& g, double tol = default_phase_tol) {
  const auto cycles = enumerate_simple_cycles(g, g.size());
  return std::all_of(cycles.begin(), cycles.end(),
                     [tol](const cycle& c) { return is_positive_real(c.weight, tol); });
}

}  // namespace cplap

#endif  // CPLAP_GRAPH_HPP
