#ifndef CPLAP_FIXTURES_HPP
#define CPLAP_FIXTURES_HPP

// Worked example graphs, built in code. The same graphs ship as JSON under
// fixtures/.

#include "cplap/graph.hpp"

namespace cplap::fixtures {

inline constexpr complex j{0.0, 1.0};

/// Four agents: cycle 1 -> 2 -> 3 -> 1 with a pendant 2 -> 4. Essentially
/// nonnegative with a spanning tree.
inline digraph four_agent() {
  return digraph(4, {{0, 2, -j}, {1, 0, 1.0}, {2, 1, j}, {3, 1, 1.0 + j}});
}

/// Balanced as a digraph (its only cycle has weight 2) yet not essentially
/// nonnegative.
inline digraph counterexample3() {
  return digraph(3, {{0, 1, 2.0}, {1, 0, 1.0}, {2, 0, -j}, {2, 1, j}});
}

/// Six agents: cycles 1 -> 5 -> 6 -> 1 and 2 -> 4 -> 3 -> 2 joined by the
/// edge 1 -> 2. Has a spanning tree, zero is an eigenvalue of L, but the
/// second cycle has weight 1 + j so consensus fails.
inline digraph unbalanced6() {
  return digraph(6, {{0, 5, 1.0},
                     {1, 0, 1.0},
                     {1, 2, 1.0},
                     {2, 3, 1.0 - j},
                     {3, 1, j},
                     {4, 0, j},
                     {5, 4, -j}});
}

/// Antagonistic pair: a_12 = a_21 = -1.
inline digraph signed2() { return digraph(2, {{0, 1, -1.0}, {1, 0, -1.0}}); }

/// Symmetric signed triangle whose cycle product is -1.
inline digraph signed_triangle_unbalanced() {
  return digraph(3, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}, {2, 1, 1.0}, {0, 2, -1.0}, {2, 0, -1.0}});
}

}  // namespace cplap::fixtures

#endif  // CPLAP_FIXTURES_HPP
