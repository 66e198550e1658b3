#ifndef CPLAP_BALANCE_HPP
#define CPLAP_BALANCE_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cplap/error.hpp"
#include "cplap/graph.hpp"

namespace cplap {

/// Gauge vector zeta in T^n; acts on adjacency matrices as D^-1 A D with
/// D = diag(zeta).
class switching_vector {
 public:
  static constexpr double modulus_tol = 1e-12;

  switching_vector() = default;

  explicit switching_vector(std::vector<complex> zeta) : zeta_(std::move(zeta)) {
    for (std::size_t i = 0; i < zeta_.size(); ++i) {
      if (std::abs(std::abs(zeta_[i]) - 1.0) > modulus_tol)
        throw error(errc::invalid_config,
                    "switching vector entry " + std::to_string(i + 1) + " is not of unit modulus");
    }
  }

  /// All-ones gauge.
  static switching_vector identity(std::size_t n) {
    return switching_vector(std::vector<complex>(n, complex{1.0, 0.0}));
  }

  std::size_t size() const noexcept { return zeta_.size(); }
  const complex& operator[](std::size_t i) const { return zeta_[i]; }
  const std::vector<complex>& values() const noexcept { return zeta_; }

  /// Entrywise inverse (equal to the conjugate on T^n).
  switching_vector inverse() const {
    std::vector<complex> inv(zeta_.size());
    std::transform(zeta_.begin(), zeta_.end(), inv.begin(),
                   [](complex z) { return std::conj(z); });
    return switching_vector(std::move(inv));
  }

 private:
  std::vector<complex> zeta_;
};

/// Phase constraint zeta_row = phi(a_{row,col}) zeta_col that the candidate
/// gauge could not satisfy, with the closed walk through the BFS forest that
/// forces it. The walk runs col -> ... -> row and is closed by the entry.
struct balance_conflict {
  std::size_t row = 0;
  std::size_t col = 0;
  std::vector<std::size_t> walk;
};

struct balance_witness {
  switching_vector zeta;
};

/// Either a gauge making D^-1 A D nonnegative, or a concrete obstruction.
class balance_certificate {
 public:
  balance_certificate(balance_witness w) : outcome_(std::move(w)) {}
  balance_certificate(balance_conflict c) : outcome_(std::move(c)) {}

  bool has_witness() const noexcept { return std::holds_alternative<balance_witness>(outcome_); }
  const switching_vector& zeta() const { return std::get<balance_witness>(outcome_).zeta; }
  const balance_conflict& conflict() const { return std::get<balance_conflict>(outcome_); }

 private:
  std::variant<balance_witness, balance_conflict> outcome_;
};

/// D^-1 A D: entry (i, j) becomes zeta_i^-1 a_ij zeta_j. Edge set unchanged.
inline digraph apply_switching(const digraph& g, const switching_vector& zeta) {
  if (zeta.size() != g.size())
    throw error(errc::dimension_mismatch, "switching vector has length " +
                                              std::to_string(zeta.size()) + ", graph has " +
                                              std::to_string(g.size()) + " vertices");
  std::vector<entry> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.entries())
    out.push_back({e.row, e.col, std::conj(zeta[e.row]) * e.weight * zeta[e.col]});
  return digraph(g.size(), std::move(out));
}

namespace detail {

struct constraint_arc {
  std::size_t to;
  complex transfer;  // zeta_to = transfer * zeta_from
  std::size_t entry_index;
};

inline std::vector<std::size_t> forest_path_to_root(const std::vector<std::size_t>& parent,
                                                    std::size_t v) {
  std::vector<std::size_t> path{v};
  while (parent[v] != v) {
    v = parent[v];
    path.push_back(v);
  }
  return path;
}

}  // namespace detail

/// Searches for zeta in T^n with D^-1 A D entrywise nonnegative.
///
/// The support of A is treated as an undirected constraint graph in which
/// each entry a_ij demands zeta_i = phi(a_ij) zeta_j. Each connected
/// component is seeded with zeta = 1 at its smallest vertex and the phases are
/// propagated breadth-first along a spanning forest; every entry is then
/// checked. The first violated entry (in (row, col) order) is reported.
inline balance_certificate find_switching_vector(const digraph& g,
                                                 double tol = default_phase_tol) {
  const std::size_t n = g.size();
  const auto entries = g.entries();
  std::vector<std::vector<detail::constraint_arc>> arcs(n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const complex p = phase_of(e.weight);
    arcs[e.col].push_back({e.row, p, k});
    arcs[e.row].push_back({e.col, std::conj(p), k});
  }
  for (auto& a : arcs)
    std::sort(a.begin(), a.end(), [](const auto& x, const auto& y) {
      return x.to != y.to ? x.to < y.to : x.entry_index < y.entry_index;
    });

  std::vector<complex> zeta(n, complex{1.0, 0.0});
  std::vector<std::size_t> parent(n);
  std::vector<bool> seen(n, false);
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (seen[seed]) continue;
    seen[seed] = true;
    parent[seed] = seed;
    std::deque<std::size_t> queue{seed};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& arc : arcs[u]) {
        if (seen[arc.to]) continue;
        seen[arc.to] = true;
        parent[arc.to] = u;
        const complex z = arc.transfer * zeta[u];
        zeta[arc.to] = z / std::abs(z);
        queue.push_back(arc.to);
      }
    }
  }

  for (const auto& e : entries) {
    const complex w = std::conj(zeta[e.row]) * e.weight * zeta[e.col];
    if (is_positive_real(w, tol)) continue;
    auto up_row = detail::forest_path_to_root(parent, e.row);
    auto up_col = detail::forest_path_to_root(parent, e.col);
    // Strip the shared ancestry, keeping the lowest common ancestor once.
    while (up_row.size() > 1 && up_col.size() > 1 &&
           up_row[up_row.size() - 2] == up_col[up_col.size() - 2]) {
      up_row.pop_back();
      up_col.pop_back();
    }
    balance_conflict c{e.row, e.col, up_col};
    c.walk.insert(c.walk.end(), up_row.rbegin() + 1, up_row.rend());
    return c;
  }
  return balance_witness{switching_vector(std::move(zeta))};
}

/// Every reciprocal pair satisfies a_ij a_ji > 0; pairs with a missing side
/// pass vacuously.
inline bool check_reciprocal_products(const digraph& g, double tol = default_phase_tol) {
  for (const auto& e : g.entries()) {
    if (e.col < e.row) continue;
    const complex back = g.weight(e.col, e.row);
    if (back == complex{}) continue;
    if (!is_positive_real(e.weight * back, tol)) return false;
  }
  return true;
}

/// Cycle-based characterization of essential nonnegativity: the graph of the
/// Hermitian part is balanced and all reciprocal products are positive.
/// Exponential; limited to cycle_oracle_limit vertices.
inline bool hermitian_part_criterion(const digraph& g, double tol = default_phase_tol) {
  return is_balanced_by_cycles(hermitian_part(g), tol) && check_reciprocal_products(g, tol);
}

/// Signature gauge sigma in {+1, -1}^n for a real signed digraph, so that
/// D_sigma A D_sigma is nonnegative.
inline balance_certificate sign_gauge(const digraph& g, double tol = default_phase_tol) {
  if (!g.is_real_weighted(tol)) throw error(errc::not_real_weighted, "sign gauge needs real weights");
  auto cert = find_switching_vector(g, tol);
  if (!cert.has_witness()) return cert;
  // Real phases propagate as products of +-1, so the witness is already a
  // signature up to rounding.
  std::vector<complex> sigma(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    sigma[i] = cert.zeta()[i].real() >= 0.0 ? 1.0 : -1.0;
  return balance_witness{switching_vector(std::move(sigma))};
}

}  // namespace cplap

#endif  // CPLAP_BALANCE_HPP
