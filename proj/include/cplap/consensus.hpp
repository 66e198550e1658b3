#ifndef CPLAP_CONSENSUS_HPP
#define CPLAP_CONSENSUS_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "cplap/balance.hpp"
#include "cplap/error.hpp"
#include "cplap/graph.hpp"
#include "cplap/spectral.hpp"

namespace cplap {

enum class consensus_class { complex_consensus, no_consensus };

inline const char* to_string(consensus_class c) {
  return c == consensus_class::complex_consensus ? "COMPLEX_CONSENSUS" : "NO_CONSENSUS";
}

/// Graph-level verdict for z' = -kappa L z and z(k+1) = (I - kappa L) z(k).
///
/// zeta and eta are populated exactly when the classification is
/// complex_consensus. eta_support lists the vertices where eta is nonzero.
struct consensus_verdict {
  std::size_t n = 0;
  bool has_spanning_tree = false;
  bool strongly_connected = false;
  std::vector<std::size_t> roots;
  bool essentially_nonnegative = false;
  std::optional<balance_certificate> certificate;
  std::optional<switching_vector> zeta;
  std::optional<complex_vector> eta;
  std::vector<std::size_t> eta_support;
  consensus_class classification = consensus_class::no_consensus;
  double max_modulus_degree = 0.0;
  double dt_gain_bound = std::numeric_limits<double>::infinity();  // 1 / Delta
};

struct limit_prediction {
  complex_vector limit_vector;
  complex projection;  // eta^T z0
  double consensus_modulus = 0.0;
  /// eta^T z0 vanishes, so the state goes to 0 rather than a circle of
  /// positive radius.
  bool degenerate = false;
};

namespace detail {

inline consensus_verdict assemble_verdict(const digraph& g, balance_certificate cert, double tol) {
  consensus_verdict v;
  v.n = g.size();
  const auto roots = find_roots(g);
  v.has_spanning_tree = roots.has_spanning_tree;
  v.strongly_connected = roots.strongly_connected;
  v.roots = roots.roots;
  v.essentially_nonnegative = cert.has_witness();
  v.max_modulus_degree = max_modulus_degree(g);
  v.dt_gain_bound = v.max_modulus_degree > 0.0 ? 1.0 / v.max_modulus_degree
                                               : std::numeric_limits<double>::infinity();
  if (v.has_spanning_tree && v.essentially_nonnegative) {
    v.classification = consensus_class::complex_consensus;
    v.zeta = cert.zeta();
    v.eta = left_null_vector_eta(laplacian(g), *v.zeta, tol);
    const double cut = 1e-12;
    for (Eigen::Index i = 0; i < v.eta->size(); ++i)
      if (std::abs((*v.eta)(i)) > cut) v.eta_support.push_back(static_cast<std::size_t>(i));
  }
  v.certificate = std::move(cert);
  return v;
}

inline double max_abs(const complex_vector& z) { return z.size() ? z.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace detail

/// Complex consensus is reached iff A is essentially nonnegative and G(A) has
/// a spanning tree; the DT system additionally needs 0 < kappa < 1/Delta.
inline consensus_verdict analyze(const digraph& g, double tol = default_phase_tol) {
  return detail::assemble_verdict(g, find_switching_vector(g, tol), tol);
}

/// Limit (eta^T z0) zeta of either dynamics. eta^T z0 is the bilinear form,
/// not the conjugated inner product.
inline limit_prediction predict_limit(const consensus_verdict& v, const complex_vector& z0,
                                      double degenerate_tol = 1e-12) {
  if (v.classification != consensus_class::complex_consensus)
    throw error(errc::not_consensus_graph, "graph does not reach complex consensus");
  if (static_cast<std::size_t>(z0.size()) != v.n)
    throw error(errc::dimension_mismatch, "initial state has wrong length");
  limit_prediction p;
  p.projection = v.eta->transpose() * z0;
  p.consensus_modulus = std::abs(p.projection);
  p.limit_vector.resize(z0.size());
  for (std::size_t i = 0; i < v.n; ++i) p.limit_vector(i) = p.projection * (*v.zeta)[i];
  p.degenerate = p.consensus_modulus <= degenerate_tol * std::max(1.0, detail::max_abs(z0));
  return p;
}

/// Hermitian shortcut: limit (1/n)(zeta* z0) zeta with the conjugate transpose.
inline limit_prediction hermitian_limit(const digraph& g, const complex_vector& z0,
                                        double tol = default_phase_tol) {
  if (!g.is_hermitian(1e-12 * std::max(1.0, max_modulus_degree(g))))
    throw error(errc::not_hermitian, "adjacency matrix is not Hermitian");
  if (static_cast<std::size_t>(z0.size()) != g.size())
    throw error(errc::dimension_mismatch, "initial state has wrong length");
  const auto cert = find_switching_vector(g, tol);
  if (!find_roots(g).has_spanning_tree || !cert.has_witness())
    throw error(errc::not_consensus_graph, "Hermitian graph is unbalanced or disconnected");
  const auto& zeta = cert.zeta();
  limit_prediction p;
  complex inner{};
  for (std::size_t i = 0; i < g.size(); ++i) inner += std::conj(zeta[i]) * z0(i);
  p.projection = inner / static_cast<double>(g.size());
  p.consensus_modulus = std::abs(p.projection);
  p.limit_vector.resize(z0.size());
  for (std::size_t i = 0; i < g.size(); ++i) p.limit_vector(i) = p.projection * zeta[i];
  p.degenerate = p.consensus_modulus <= 1e-12 * std::max(1.0, detail::max_abs(z0));
  return p;
}

/// Real signed digraphs: bipartite consensus with a signature gauge sigma and
/// a real eta.
inline consensus_verdict bipartite_analyze(const digraph& g, double tol = default_phase_tol) {
  auto v = detail::assemble_verdict(g, sign_gauge(g, tol), tol);
  if (v.eta) *v.eta = v.eta->real().cast<complex>();
  return v;
}

}  // namespace cplap

#endif  // CPLAP_CONSENSUS_HPP
