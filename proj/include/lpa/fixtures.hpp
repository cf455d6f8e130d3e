#pragma once

#include <string>

#include "lpa/extension.hpp"
#include "lpa/fields.hpp"
#include "lpa/graph.hpp"
#include "lpa/polynomial.hpp"

namespace lpa::fixtures {

// Embedded copy of fixtures/example.graph so the selftest does not depend
// on a filesystem layout.
inline const char* example_graph_text() {
  return R"(# Running example graph: four exclusive-or-not cycles (d1..d4, g1..g3,
# the loops g', a, l) hanging together through connecting edges.
#
# Reading note: the figure this graph comes from draws the arrow out of v
# ambiguously; we fix n as v -> z (so m n is a path s3 -> z onto the loop
# l). The connector and dimension values in the test suite depend on this
# orientation.
vertex s1 s2 s3 s4 u t1 t2 t3 w v z
edge d1 s1 s2
edge d2 s2 s3
edge d3 s3 s4
edge d4 s4 s1
edge p u s4
edge b s2 t3
edge m s3 v
edge n v z
edge g1 t1 t2
edge g2 t2 t3
edge g3 t3 t1
edge g' t1 t1
edge h t1 w
edge a w w
edge l z z
)";
}

inline const char* toeplitz_graph_text() {
  return R"(# Toeplitz graph: one loop with one exit edge.
vertex v w
edge e v v
edge f v w
)";
}

inline Graph example_graph() { return parse_graph(example_graph_text()); }
inline Graph toeplitz_graph() { return parse_graph(toeplitz_graph_text()); }

inline Cycle cycle_d(const Graph& g) { return parse_cycle(g, "d1 d2 d3 d4"); }
inline Cycle cycle_g(const Graph& g) { return parse_cycle(g, "g1 g2 g3"); }
inline Cycle cycle_gp(const Graph& g) { return parse_cycle(g, "g'"); }
inline Cycle cycle_a(const Graph& g) { return parse_cycle(g, "a"); }
inline Cycle cycle_l(const Graph& g) { return parse_cycle(g, "l"); }

// The running pair of basic irreducible polynomials over Q.
inline Poly<RationalField> poly_p() { return poly_parse(RationalField{}, "1/2 x^2 - 1"); }
inline Poly<RationalField> poly_q() { return poly_parse(RationalField{}, "x^3 - 3x - 1"); }

}  // namespace lpa::fixtures
