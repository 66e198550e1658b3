#ifndef CPLAP_ORACLE_CHECK_HPP
#define CPLAP_ORACLE_CHECK_HPP

// Cross-validation of three independent characterizations of essential
// nonnegativity on random graphs:
//   1. the switching-vector search succeeds;
//   2. G(A_H) is cycle-balanced and every reciprocal product is positive;
//   3. zero is a simple eigenvalue of L with an equal-modulus eigenvector,
//      which must hold exactly when (1) holds and G(A) has a spanning tree.

#include <cstdint>
#include <string>
#include <vector>

#include "cplap/balance.hpp"
#include "cplap/error.hpp"
#include "cplap/graph.hpp"
#include "cplap/random_graphs.hpp"
#include "cplap/spectral.hpp"

namespace cplap {

struct oracle_outcome {
  bool switching = false;
  bool cycle_criterion = false;
  bool has_spanning_tree = false;
  bool spectral = false;

  bool agree() const {
    return switching == cycle_criterion && spectral == (has_spanning_tree && switching);
  }
};

/// Zero is a simple eigenvalue of L whose eigenvector has entries of equal
/// modulus (i.e. lies in T^n after scaling).
inline bool has_simple_zero_with_unit_modulus_vector(const complex_matrix& l,
                                                     double zero_tol = 1e-7,
                                                     double modulus_tol = 1e-6) {
  const auto s = eigenvalues(l, zero_tol);
  if (s.zero_multiplicity != 1) return false;
  const complex_vector v = right_null_vector(l, zero_tol);
  const Eigen::VectorXd mod = v.cwiseAbs();
  return mod.maxCoeff() - mod.minCoeff() <= modulus_tol * mod.maxCoeff();
}

inline oracle_outcome cross_check(const digraph& g, double tol = default_phase_tol) {
  oracle_outcome o;
  o.switching = find_switching_vector(g, tol).has_witness();
  o.cycle_criterion = hermitian_part_criterion(g, tol);
  o.has_spanning_tree = find_roots(g).has_spanning_tree;
  o.spectral = has_simple_zero_with_unit_modulus_vector(laplacian(g));
  return o;
}

struct oracle_summary {
  std::size_t total = 0;
  std::size_t agreements = 0;
  std::size_t essentially_nonnegative = 0;
  std::vector<std::size_t> disagreeing_instances;

  bool passed() const { return agreements == total; }
};

/// Runs `count` random graphs with 1..max_n vertices (2..max_n when max_n > 1).
inline oracle_summary run_oracle_check(std::size_t max_n, std::size_t count, std::uint64_t seed) {
  if (max_n > cycle_oracle_limit)
    throw error(errc::size_limit_exceeded, "oracle check supports at most " +
                                               std::to_string(cycle_oracle_limit) + " vertices");
  if (max_n == 0) throw error(errc::invalid_config, "vertex count must be positive");
  random_graphs::rng_type rng(seed);
  oracle_summary s;
  const std::size_t lo = max_n > 1 ? 2 : 1;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(lo, max_n)(rng);
    const auto g = random_graphs::mixed_graph(n, rng);
    const auto o = cross_check(g);
    ++s.total;
    if (o.switching) ++s.essentially_nonnegative;
    if (o.agree())
      ++s.agreements;
    else
      s.disagreeing_instances.push_back(k);
  }
  return s;
}

}  // namespace cplap

#endif  // CPLAP_ORACLE_CHECK_HPP
