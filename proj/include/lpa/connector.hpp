#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"

namespace lpa {

// Decision procedure for the connector set of (source cycle c, target
// cycle e): the infinite paths starting at s(c), tail equivalent to
// e^inf, and not left divisible by c. Finite sets are enumerated as
// canonical representatives mu (r(mu) = s(e), mu not right divisible by
// e); infinite sets come with a pumping witness.
//
// Deterministic product automaton over the graph's edges. A state tracks
//   - the current vertex,
//   - the longest suffix of mu that is a prefix of e (KMP state; mu is
//     right divisible by e exactly when this reaches |e|),
//   - whether mu is still exactly a prefix of c (tracker j), or has
//     diverged (free). Reaching j = |c| means c | mu e^inf forever, a
//     dead state that is never created.
struct ConnectorAutomaton {
  struct State {
    int vertex;
    int kmp;
    int tracker;  // -1 = free, j >= 0 = mu equals the first j edges of c
    auto operator<=>(const State&) const = default;
  };
  struct Transition {
    int from;
    int edge;
    int to;
  };

  std::vector<State> states;
  std::vector<Transition> transitions;
  std::vector<char> accepting;
  int start = -1;
};

struct ConnectorWitness {
  Path stem;               // start -> cycle entry
  std::vector<int> cycle;  // pumpable edge loop in the automaton
  Path tail;               // cycle entry -> an accepted representative
};

struct ConnectorResult {
  bool infinite = false;
  std::vector<Path> reps;  // canonical, sorted (finite case)
  ConnectorWitness witness;  // infinite case
};

namespace detail {

// KMP transition table for the pattern e over the whole edge alphabet:
// next[k][g] = longest j such that e_1..e_j is a suffix of (e_1..e_k, g).
inline std::vector<std::vector<int>> kmp_table(const Graph& g, const Cycle& e) {
  const int N = e.length();
  const auto& pat = e.path.edges;
  std::vector<std::vector<int>> next(N + 1, std::vector<int>(g.num_edges(), 0));
  for (int k = 0; k <= N; ++k)
    for (int ed = 0; ed < g.num_edges(); ++ed) {
      std::vector<int> word(pat.begin(), pat.begin() + k);
      word.push_back(ed);
      int best = 0;
      for (int j = std::min(static_cast<int>(word.size()), N); j >= 1; --j) {
        bool ok = true;
        for (int i = 0; i < j && ok; ++i)
          ok = word[word.size() - j + i] == pat[i];
        if (ok) {
          best = j;
          break;
        }
      }
      next[k][ed] = best;
    }
  return next;
}

}  // namespace detail

inline ConnectorAutomaton build_connector_automaton(const Graph& g, const Cycle& source,
                                                    const Cycle& target) {
  if (!is_cycle_of(g, source) || !is_cycle_of(g, target))
    fail(ErrKind::NotACycleOfGraph, "connector cycles must belong to the graph");
  const auto& c = source.path.edges;
  const int clen = static_cast<int>(c.size());
  const int N = target.length();
  auto kmp = detail::kmp_table(g, target);

  // tail_divides[j]: with mu = c_1..c_j, does c left divide mu e^inf?
  std::vector<char> tail_divides(clen, 0);
  for (int j = 0; j < clen; ++j) {
    bool all = true;
    for (int i = 0; i + j < clen && all; ++i)
      all = c[j + i] == target.path.edges[i % N];
    tail_divides[j] = all;
  }

  ConnectorAutomaton a;
  std::map<ConnectorAutomaton::State, int> index;
  auto intern = [&](const ConnectorAutomaton::State& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(a.states.size());
    index.emplace(s, id);
    a.states.push_back(s);
    return id;
  };
  a.start = intern({source.base(g), 0, 0});
  for (int i = 0; i < static_cast<int>(a.states.size()); ++i) {
    auto s = a.states[i];
    for (int ed = 0; ed < g.num_edges(); ++ed) {
      if (g.edge(ed).src != s.vertex) continue;
      int tracker = -1;
      if (s.tracker >= 0 && ed == c[s.tracker]) {
        tracker = s.tracker + 1;
        if (tracker == clen) continue;  // c divides every extension: dead
      }
      int to = intern({g.edge(ed).dst, kmp[s.kmp][ed], tracker});
      a.transitions.push_back({i, ed, to});
    }
  }
  a.accepting.assign(a.states.size(), 0);
  for (size_t i = 0; i < a.states.size(); ++i) {
    const auto& s = a.states[i];
    a.accepting[i] = s.vertex == target.base(g) && s.kmp < N &&
                     (s.tracker < 0 || !tail_divides[s.tracker]);
  }
  return a;
}

// Trimmed automaton: states reachable from start and co-reachable to an
// accepting state. Finiteness is structural: the connector set is
// infinite exactly when the trimmed automaton has a cycle.
inline ConnectorResult connector_set(const Graph& g, const Cycle& source, const Cycle& target) {
  auto a = build_connector_automaton(g, source, target);
  const int n = static_cast<int>(a.states.size());

  std::vector<char> useful(n, 0);
  {
    std::vector<std::vector<int>> rev(n);
    for (const auto& t : a.transitions) rev[t.to].push_back(t.from);
    std::vector<int> todo;
    for (int i = 0; i < n; ++i)
      if (a.accepting[i]) {
        useful[i] = 1;
        todo.push_back(i);
      }
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int u : rev[v])
        if (!useful[u]) {
          useful[u] = 1;
          todo.push_back(u);
        }
    }
  }
  if (!useful[a.start]) return {};  // empty language

  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge, to)
  for (const auto& t : a.transitions)
    if (useful[t.from] && useful[t.to]) adj[t.from].push_back({t.edge, t.to});

  // cycle detection on the trimmed graph
  std::vector<int> color(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::pair<int, int>> stack_path;  // (state, edge taken)
  std::vector<int> cycle_states;
  auto dfs = [&](auto&& self, int v) -> bool {
    color[v] = 1;
    for (auto [ed, w] : adj[v]) {
      if (color[w] == 1) {
        // back edge: recover the loop from the DFS stack
        cycle_states.clear();
        size_t k = stack_path.size();
        while (k > 0 && stack_path[k - 1].first != w) --k;
        for (size_t i = k > 0 ? k - 1 : 0; i < stack_path.size(); ++i)
          cycle_states.push_back(stack_path[i].first);
        cycle_states.push_back(v);
        cycle_states.push_back(w);  // v -e-> w closes the loop
        stack_path.push_back({v, ed});
        return true;
      }
      if (color[w] == 0) {
        stack_path.push_back({v, -1});
        // record the edge on the stack entry for path recovery
        stack_path.back().second = ed;
        if (self(self, w)) return true;
        stack_path.pop_back();
      }
    }
    color[v] = 2;
    return false;
  };

  ConnectorResult out;
  if (useful[a.start] && dfs(dfs, a.start)) {
    out.infinite = true;
    // stack_path spells start -> ... -> v plus the closing edge; split at
    // the first occurrence of w (the loop entry).
    int loop_entry = cycle_states.back();
    std::vector<int> stem_edges, loop_edges;
    bool in_loop = false;
    for (const auto& [st, ed] : stack_path) {
      if (st == loop_entry) in_loop = true;
      (in_loop ? loop_edges : stem_edges).push_back(ed);
    }
    out.witness.stem = stem_edges.empty() ? Path::vertex(source.base(g))
                                          : make_path(g, stem_edges);
    out.witness.cycle = loop_edges;
    // tail: BFS from loop entry to an accepting state
    std::vector<int> prev_state(n, -1), prev_edge(n, -1);
    std::vector<int> todo{loop_entry};
    std::vector<char> seen(n, 0);
    seen[loop_entry] = 1;
    int found = a.accepting[loop_entry] ? loop_entry : -1;
    while (!todo.empty() && found < 0) {
      int v = todo.front();
      todo.erase(todo.begin());
      for (auto [ed, w] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        prev_state[w] = v;
        prev_edge[w] = ed;
        if (a.accepting[w]) {
          found = w;
          break;
        }
        todo.push_back(w);
      }
    }
    std::vector<int> tail_edges;
    for (int v = found; v >= 0 && prev_state[v] >= 0; v = prev_state[v])
      tail_edges.push_back(prev_edge[v]);
    std::reverse(tail_edges.begin(), tail_edges.end());
    int entry_vertex = a.states[loop_entry].vertex;
    out.witness.tail =
        tail_edges.empty() ? Path::vertex(entry_vertex) : make_path(g, tail_edges);
    return out;
  }

  // acyclic: enumerate every start -> accepting path
  std::vector<int> edges;
  auto enumerate = [&](auto&& self, int v) -> void {
    if (a.accepting[v])
      out.reps.push_back(edges.empty() ? Path::vertex(source.base(g)) : make_path(g, edges));
    for (auto [ed, w] : adj[v]) {
      edges.push_back(ed);
      self(self, w);
      edges.pop_back();
    }
  };
  enumerate(enumerate, a.start);
  std::sort(out.reps.begin(), out.reps.end(), [&](const Path& x, const Path& y) {
    if (x.length() != y.length()) return x.length() < y.length();
    return path_str(g, x) < path_str(g, y);
  });
  return out;
}

}  // namespace lpa
