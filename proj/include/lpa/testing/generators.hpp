#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpa/chen.hpp"
#include "lpa/element.hpp"
#include "lpa/graph.hpp"

namespace lpa::testing {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random multigraph with nv <= max_vertices and a few random edges.
inline Graph random_graph(Rng& rng, int max_vertices = 6, int max_edges = 8) {
  int nv = pick(rng, 2, max_vertices);
  int ne = pick(rng, 1, max_edges);
  Graph g;
  for (int v = 0; v < nv; ++v) g.add_vertex("v" + std::to_string(v));
  for (int e = 0; e < ne; ++e)
    g.add_edge("e" + std::to_string(e), "v" + std::to_string(pick(rng, 0, nv - 1)),
               "v" + std::to_string(pick(rng, 0, nv - 1)));
  return g;
}

// Random forward walk of length <= max_len from a random vertex.
inline Path random_path(Rng& rng, const Graph& g, int max_len = 3) {
  Path p = Path::vertex(pick(rng, 0, g.num_vertices() - 1));
  int len = pick(rng, 0, max_len);
  for (int i = 0; i < len; ++i) {
    auto outs = g.out_edges(p.range(g));
    if (outs.empty()) break;
    int e = outs[pick(rng, 0, static_cast<int>(outs.size()) - 1)];
    if (p.is_vertex()) p.at = g.edge(e).src;
    p.edges.push_back(e);
  }
  return p;
}

// Random backward walk ending at `target`, so the result composes with
// anything whose range is `target`.
inline Path random_path_to(Rng& rng, const Graph& g, int target, int max_len = 3) {
  std::vector<int> edges;
  int at = target;
  int len = pick(rng, 0, max_len);
  for (int i = 0; i < len; ++i) {
    std::vector<int> ins;
    for (int e = 0; e < g.num_edges(); ++e)
      if (g.edge(e).dst == at) ins.push_back(e);
    if (ins.empty()) break;
    int e = ins[pick(rng, 0, static_cast<int>(ins.size()) - 1)];
    edges.insert(edges.begin(), e);
    at = g.edge(e).src;
  }
  return edges.empty() ? Path::vertex(target) : make_path(g, edges);
}

// Random monomial alpha beta* with matching ranges.
template <class F>
LpaElement<F> random_monomial(Rng& rng, const Graph& g, const F& f, int max_len = 3) {
  Path alpha = random_path(rng, g, max_len);
  Path beta = random_path_to(rng, g, alpha.range(g), max_len);
  // nonzero small scalar
  auto k = f.from_int(pick(rng, 1, 5));
  return LpaElement<F>::monomial(&g, f, alpha, beta, k);
}

template <class F>
LpaElement<F> random_element(Rng& rng, const Graph& g, const F& f, int terms = 3,
                             int max_len = 3) {
  LpaElement<F> out(&g, f);
  int n = pick(rng, 1, terms);
  for (int i = 0; i < n; ++i) out = out + random_monomial(rng, g, f, max_len);
  return out;
}

// Random module vector: combination of canonical representatives ending
// at the cycle base.
template <class F, class CF>
typename ChenModule<F, CF>::Vec random_vector(Rng& rng, const ChenModule<F, CF>& m,
                                              int terms = 2, int max_len = 3) {
  const Graph& g = *m.graph();
  typename ChenModule<F, CF>::Vec out;
  int n = pick(rng, 1, terms);
  for (int i = 0; i < n; ++i) {
    Path mu = random_path_to(rng, g, m.cycle().base(g), max_len);
    auto k = m.coeff_field().from_int(pick(rng, 1, 5));
    for (const auto& [key, c] : m.canonical_vector(mu, k)) m.add_into(out, key, c);
  }
  return out;
}

}  // namespace lpa::testing
