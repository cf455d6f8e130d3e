#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lpa/errors.hpp"

namespace lpa {

// Finite directed multigraph. Vertices and edges keep their declaration
// order; several operations (special-edge choice, output ordering) depend
// on that order being stable.
class Graph {
 public:
  struct Edge {
    std::string id;
    int src;
    int dst;
  };

  Graph() = default;

  static Graph build(const std::vector<std::string>& vertex_ids,
                     const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
    Graph g;
    for (const auto& v : vertex_ids) g.add_vertex(v);
    for (const auto& [id, src, dst] : edges) g.add_edge(id, src, dst);
    return g;
  }

  void add_vertex(const std::string& id) {
    if (vmap_.count(id) || emap_.count(id))
      fail(ErrKind::DuplicateId, "vertex id '" + id + "' already declared");
    vmap_[id] = static_cast<int>(vertices_.size());
    vertices_.push_back(id);
  }

  void add_edge(const std::string& id, const std::string& src, const std::string& dst) {
    if (emap_.count(id) || vmap_.count(id))
      fail(ErrKind::DuplicateId, "edge id '" + id + "' already declared");
    auto s = vmap_.find(src);
    auto r = vmap_.find(dst);
    if (s == vmap_.end())
      fail(ErrKind::DanglingEndpoint, "edge '" + id + "' has undeclared source '" + src + "'");
    if (r == vmap_.end())
      fail(ErrKind::DanglingEndpoint, "edge '" + id + "' has undeclared target '" + dst + "'");
    emap_[id] = static_cast<int>(edges_.size());
    edges_.push_back(Edge{id, s->second, r->second});
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_id(int v) const { return vertices_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }

  int vertex(const std::string& id) const {
    auto it = vmap_.find(id);
    if (it == vmap_.end()) fail(ErrKind::UnknownId, "unknown vertex '" + id + "'");
    return it->second;
  }
  int edge_index(const std::string& id) const {
    auto it = emap_.find(id);
    if (it == emap_.end()) fail(ErrKind::UnknownId, "unknown edge '" + id + "'");
    return it->second;
  }
  bool has_vertex(const std::string& id) const { return vmap_.count(id) > 0; }
  bool has_edge(const std::string& id) const { return emap_.count(id) > 0; }

  // Outgoing edges of v in declaration order.
  std::vector<int> out_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].src == v) out.push_back(e);
    return out;
  }

  // First-declared outgoing edge, or -1 for a sink.
  int special_edge(int v) const {
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].src == v) return e;
    return -1;
  }

  bool operator==(const Graph& o) const {
    if (vertices_ != o.vertices_) return false;
    if (edges_.size() != o.edges_.size()) return false;
    for (size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].id != o.edges_[i].id || edges_[i].src != o.edges_[i].src ||
          edges_[i].dst != o.edges_[i].dst)
        return false;
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, int> vmap_;
  std::map<std::string, int> emap_;
};

// A finite path: a vertex (length 0) or a composable edge sequence.
// `at` is the source vertex; for nonempty paths it duplicates the first
// edge's source.
struct Path {
  int at = -1;
  std::vector<int> edges;

  static Path vertex(int v) { return Path{v, {}}; }

  int length() const { return static_cast<int>(edges.size()); }
  bool is_vertex() const { return edges.empty(); }

  int source() const { return at; }
  int range(const Graph& g) const { return edges.empty() ? at : g.edge(edges.back()).dst; }

  auto operator<=>(const Path&) const = default;
};

inline Path make_path(const Graph& g, const std::vector<int>& edges) {
  if (edges.empty()) fail(ErrKind::SyntaxError, "empty edge list needs an explicit vertex");
  Path p{g.edge(edges[0]).src, edges};
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    if (g.edge(edges[i]).dst != g.edge(edges[i + 1]).src)
      fail(ErrKind::NotComposable, "edges '" + g.edge(edges[i]).id + "' and '" +
                                       g.edge(edges[i + 1]).id + "' do not compose");
  return p;
}

inline std::string path_str(const Graph& g, const Path& p) {
  if (p.is_vertex()) return g.vertex_id(p.at);
  std::string s;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ' ';
    s += g.edge(p.edges[i]).id;
  }
  return s;
}

inline Path concat(const Graph& g, const Path& p, const Path& q) {
  if (p.range(g) != q.source())
    fail(ErrKind::NotComposable, "r(" + path_str(g, p) + ") != s(" + path_str(g, q) + ")");
  Path out = p;
  out.edges.insert(out.edges.end(), q.edges.begin(), q.edges.end());
  return out;
}

enum class Side { Left, Right };

struct DivisibilityWitness {
  Path divisor;
  Path quotient;
  Side side;
};

// mu | lambda on the chosen side; the witness quotient re-concatenates to
// lambda.
inline std::optional<DivisibilityWitness> divides(const Graph& g, const Path& mu,
                                                  const Path& lambda, Side side) {
  if (mu.length() > lambda.length()) return std::nullopt;
  if (mu.is_vertex()) {
    int v = side == Side::Left ? lambda.source() : lambda.range(g);
    if (v != mu.at) return std::nullopt;
    return DivisibilityWitness{mu, lambda, side};
  }
  const size_t n = mu.edges.size();
  const size_t off = side == Side::Left ? 0 : lambda.edges.size() - n;
  for (size_t i = 0; i < n; ++i)
    if (lambda.edges[off + i] != mu.edges[i]) return std::nullopt;
  Path quot;
  if (side == Side::Left) {
    quot.edges.assign(lambda.edges.begin() + n, lambda.edges.end());
    quot.at = quot.edges.empty() ? lambda.range(g) : g.edge(quot.edges[0]).src;
  } else {
    quot.edges.assign(lambda.edges.begin(), lambda.edges.end() - n);
    quot.at = lambda.source();
  }
  return DivisibilityWitness{mu, quot, side};
}

// A closed path with pairwise-distinct sources. The first edge is kept
// exactly as given; the gauge automorphism is tied to it.
struct Cycle {
  Path path;

  int base(const Graph& g) const { return path.source(); }
  int length() const { return path.length(); }
  int first_edge() const { return path.edges.front(); }

  // Lexicographically least rotation of the edge-id sequence.
  std::vector<std::string> canonical_key(const Graph& g) const {
    const int n = length();
    std::vector<std::string> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = g.edge(path.edges[i]).id;
    std::vector<std::string> best = ids;
    for (int r = 1; r < n; ++r) {
      std::vector<std::string> rot(ids.begin() + r, ids.end());
      rot.insert(rot.end(), ids.begin(), ids.begin() + r);
      if (rot < best) best = rot;
    }
    return best;
  }

  bool same_rotation_class(const Graph& g, const Cycle& o) const {
    return canonical_key(g) == o.canonical_key(g);
  }

  auto operator<=>(const Cycle&) const = default;
};

inline Cycle make_cycle(const Graph& g, const std::vector<int>& edges) {
  Path p = make_path(g, edges);
  if (p.range(g) != p.source())
    fail(ErrKind::NotACycleOfGraph, "path '" + path_str(g, p) + "' is not closed");
  std::vector<int> srcs;
  for (int e : p.edges) srcs.push_back(g.edge(e).src);
  std::sort(srcs.begin(), srcs.end());
  if (std::adjacent_find(srcs.begin(), srcs.end()) != srcs.end())
    fail(ErrKind::NotACycleOfGraph, "closed path '" + path_str(g, p) + "' repeats a vertex");
  return Cycle{p};
}

// All cycles of g, one per rotation class, reported in canonical rotation,
// ordered by (length, canonical edge-id key). DFS over simple closed walks
// rooted at the minimal vertex of each class.
inline std::vector<Cycle> find_cycles(const Graph& g) {
  std::vector<Cycle> out;
  std::vector<int> stack_edges;
  std::vector<char> on_path(g.num_vertices(), 0);

  auto dfs = [&](auto&& self, int root, int v) -> void {
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).src != v) continue;
      int w = g.edge(e).dst;
      if (w == root) {
        stack_edges.push_back(e);
        out.push_back(make_cycle(g, stack_edges));
        stack_edges.pop_back();
      } else if (w > root && !on_path[w]) {
        on_path[w] = 1;
        stack_edges.push_back(e);
        self(self, root, w);
        stack_edges.pop_back();
        on_path[w] = 0;
      }
    }
  };
  for (int root = 0; root < g.num_vertices(); ++root) {
    on_path[root] = 1;
    dfs(dfs, root, root);
    on_path[root] = 0;
  }
  // Rotate each cycle into canonical form, then sort.
  for (auto& c : out) {
    auto key = c.canonical_key(g);
    std::vector<int> rot;
    const int n = c.length();
    for (int r = 0; r < n; ++r) {
      bool match = true;
      for (int i = 0; i < n && match; ++i)
        match = g.edge(c.path.edges[(r + i) % n]).id == key[i];
      if (match) {
        for (int i = 0; i < n; ++i) rot.push_back(c.path.edges[(r + i) % n]);
        break;
      }
    }
    c = make_cycle(g, rot);
  }
  std::sort(out.begin(), out.end(), [&](const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.canonical_key(g) < b.canonical_key(g);
  });
  return out;
}

inline bool is_cycle_of(const Graph& g, const Cycle& c) {
  if (c.path.edges.empty()) return false;
  for (int e : c.path.edges)
    if (e < 0 || e >= g.num_edges()) return false;
  return c.path.range(g) == c.path.source();
}

// Exclusive: no vertex of c lies on a cycle other than the rotations of c.
inline bool is_exclusive(const Graph& g, const Cycle& c) {
  if (!is_cycle_of(g, c)) fail(ErrKind::NotACycleOfGraph, "not a cycle of this graph");
  auto key = c.canonical_key(g);
  std::vector<char> on_c(g.num_vertices(), 0);
  for (int e : c.path.edges) on_c[g.edge(e).src] = 1;
  for (const Cycle& other : find_cycles(g)) {
    if (other.canonical_key(g) == key) continue;
    for (int e : other.path.edges)
      if (on_c[g.edge(e).src]) return false;
  }
  return true;
}

inline bool reachable(const Graph& g, int u, int v) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<int> todo{u};
  seen[u] = 1;
  while (!todo.empty()) {
    int w = todo.back();
    todo.pop_back();
    if (w == v) return true;
    for (int e = 0; e < g.num_edges(); ++e)
      if (g.edge(e).src == w && !seen[g.edge(e).dst]) {
        seen[g.edge(e).dst] = 1;
        todo.push_back(g.edge(e).dst);
      }
  }
  return false;
}

// Largest k with mu = mu' . e^k; the returned path is not right divisible
// by e.
inline std::pair<Path, int> strip_cycle_power(const Graph& g, const Path& mu, const Cycle& e) {
  if (mu.range(g) != e.base(g))
    fail(ErrKind::RangeMismatch, "r(" + path_str(g, mu) + ") != s(cycle)");
  Path cur = mu;
  int k = 0;
  while (true) {
    auto w = divides(g, e.path, cur, Side::Right);
    if (!w) break;
    cur = w->quotient;
    ++k;
  }
  return {cur, k};
}

// Graph text format: one directive per line, '#' starts a comment.
//   vertex <id> [<id> ...]
//   edge <edge-id> <source-id> <target-id>
inline Graph parse_graph(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    try {
      if (kw == "vertex") {
        std::string id;
        bool any = false;
        while (ls >> id) {
          g.add_vertex(id);
          any = true;
        }
        if (!any) fail(ErrKind::SyntaxError, "vertex directive needs at least one id");
      } else if (kw == "edge") {
        std::string id, src, dst, extra;
        if (!(ls >> id >> src >> dst))
          fail(ErrKind::SyntaxError, "edge directive needs <id> <source> <target>");
        if (ls >> extra) fail(ErrKind::SyntaxError, "trailing tokens after edge directive");
        g.add_edge(id, src, dst);
      } else {
        fail(ErrKind::SyntaxError, "unknown directive '" + kw + "'");
      }
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
    }
  }
  return g;
}

// Cycle literal: whitespace-separated edge ids, e.g. "d1 d2 d3 d4".
inline Cycle parse_cycle(const Graph& g, const std::string& text) {
  std::istringstream in(text);
  std::string id;
  std::vector<int> edges;
  while (in >> id) edges.push_back(g.edge_index(id));
  if (edges.empty()) fail(ErrKind::SyntaxError, "empty cycle literal");
  return make_cycle(g, edges);
}

// Human-friendly alias for a cycle: the longest common prefix of its
// canonical edge ids (so d1 d2 d3 d4 -> "d", a single loop keeps its edge
// id). Falls back to "cycle<k>" on collisions.
inline std::vector<std::string> cycle_aliases(const Graph& g, const std::vector<Cycle>& cycles) {
  std::vector<std::string> names;
  for (const Cycle& c : cycles) {
    auto key = c.canonical_key(g);
    std::string lcp = key[0];
    for (const auto& id : key) {
      size_t i = 0;
      while (i < lcp.size() && i < id.size() && lcp[i] == id[i]) ++i;
      lcp.erase(i);
    }
    names.push_back(lcp);
  }
  for (size_t i = 0; i < names.size(); ++i) {
    bool dup = names[i].empty();
    for (size_t j = 0; j < names.size() && !dup; ++j)
      if (j != i && names[j] == names[i]) dup = true;
    if (dup) names[i] = "cycle" + std::to_string(i + 1);
  }
  return names;
}

}  // namespace lpa
