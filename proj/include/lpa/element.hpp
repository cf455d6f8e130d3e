#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"
#include "lpa/polynomial.hpp"

namespace lpa {

// A monomial key: real path alpha times ghost path beta*, with
// r(alpha) = r(beta). Coefficients live in the element's map.
using MonKey = std::pair<Path, Path>;

// Element of L_K(E): finite K-linear combination of alpha beta* monomials.
// Keys are kept in map order, which fixes the display and equality order.
template <class F>
class LpaElement {
 public:
  LpaElement(const Graph* g, const F& field) : g_(g), field_(field) {}

  static LpaElement zero(const Graph* g, const F& field) { return LpaElement(g, field); }

  static LpaElement vertex(const Graph* g, const F& field, int v) {
    LpaElement x(g, field);
    x.add_term(Path::vertex(v), Path::vertex(v), field.one());
    return x;
  }

  static LpaElement real_path(const Graph* g, const F& field, const Path& alpha) {
    LpaElement x(g, field);
    x.add_term(alpha, Path::vertex(alpha.range(*g)), field.one());
    return x;
  }

  static LpaElement ghost_path(const Graph* g, const F& field, const Path& beta) {
    LpaElement x(g, field);
    x.add_term(Path::vertex(beta.range(*g)), beta, field.one());
    return x;
  }

  static LpaElement monomial(const Graph* g, const F& field, const Path& alpha, const Path& beta,
                             const typename F::Elem& k) {
    if (alpha.range(*g) != beta.range(*g))
      fail(ErrKind::RangeMismatch, "monomial needs r(alpha) = r(beta)");
    LpaElement x(g, field);
    x.add_term(alpha, beta, k);
    return x;
  }

  const Graph* graph() const { return g_; }
  const F& field() const { return field_; }
  const std::map<MonKey, typename F::Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Path& alpha, const Path& beta, const typename F::Elem& k) {
    if (field_.is_zero(k)) return;
    auto key = MonKey{alpha, beta};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, k);
    } else {
      it->second = field_.add(it->second, k);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  LpaElement operator+(const LpaElement& o) const {
    check_compat(o);
    LpaElement out = *this;
    for (const auto& [key, k] : o.terms_) out.add_term(key.first, key.second, k);
    return out;
  }

  LpaElement operator-(const LpaElement& o) const {
    check_compat(o);
    LpaElement out = *this;
    for (const auto& [key, k] : o.terms_) out.add_term(key.first, key.second, field_.neg(k));
    return out;
  }

  LpaElement scaled(const typename F::Elem& k) const {
    LpaElement out(g_, field_);
    for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, field_.mul(c, k));
    return out;
  }

  bool operator==(const LpaElement& o) const {
    if (!(*g_ == *o.g_) || !(field_ == o.field_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [key, k] : terms_) {
      if (key != it->first || !field_.eq(k, it->second)) return false;
      ++it;
    }
    return true;
  }

  void check_compat(const LpaElement& o) const {
    if (!(*g_ == *o.g_)) fail(ErrKind::GraphMismatch, "elements live over different graphs");
    if (!(field_ == o.field_)) fail(ErrKind::FieldMismatch, "elements live over different fields");
  }

 private:
  const Graph* g_;
  F field_;
  std::map<MonKey, typename F::Elem> terms_;
};

namespace detail {

// CK1 product of two monomials. Distinguishes genuine delta-zero (first
// ghost/real edges differ) from endpoint mismatches; the latter matter
// only to the expression parser, which treats real-real junction failures
// as NotComposable.
enum class MonProd { Ok, DeltaZero, JunctionMismatch };

inline MonProd monomial_product(const Graph& g, const Path& a1, const Path& b1, const Path& a2,
                                const Path& b2, Path* alpha, Path* beta) {
  // (a1 b1*)(a2 b2*): resolve b1* a2 by CK1.
  if (b1.source() != a2.source()) {
    if (!b1.is_vertex() && !a2.is_vertex() && b1.edges.front() != a2.edges.front())
      return MonProd::DeltaZero;
    return MonProd::JunctionMismatch;
  }
  if (auto w = divides(g, b1, a2, Side::Left)) {
    *alpha = concat(g, a1, w->quotient);
    *beta = b2;
    return MonProd::Ok;
  }
  if (auto w = divides(g, a2, b1, Side::Left)) {
    *alpha = a1;
    *beta = concat(g, b2, w->quotient);
    return MonProd::Ok;
  }
  return MonProd::DeltaZero;
}

}  // namespace detail

// Bilinear CK1 product. The result is not CK2-normalized.
template <class F>
LpaElement<F> multiply(const LpaElement<F>& x, const LpaElement<F>& y) {
  x.check_compat(y);
  const Graph& g = *x.graph();
  LpaElement<F> out(x.graph(), x.field());
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      Path alpha, beta;
      if (detail::monomial_product(g, kx.first, kx.second, ky.first, ky.second, &alpha, &beta) ==
          detail::MonProd::Ok)
        out.add_term(alpha, beta, x.field().mul(cx, cy));
    }
  return out;
}

// CK2 rewriting to the unique fixed point. The one redex of a monomial is
// its tail: both paths ending in the special edge sp(v) of their common
// source v. Rewrite
//   a0 sp (b0 sp)*  ->  a0 b0* - sum_{f in s^-1(v), f != sp} a0 f f* b0*
// and recurse on the shortened monomial; the f-branches are irreducible.
template <class F>
LpaElement<F> normal_form(const LpaElement<F>& x) {
  const Graph& g = *x.graph();
  LpaElement<F> out(x.graph(), x.field());
  struct Item {
    Path alpha, beta;
    typename F::Elem k;
  };
  std::vector<Item> todo;
  for (const auto& [key, k] : x.terms()) todo.push_back({key.first, key.second, k});
  while (!todo.empty()) {
    Item it = std::move(todo.back());
    todo.pop_back();
    if (!it.alpha.is_vertex() && !it.beta.is_vertex() &&
        it.alpha.edges.back() == it.beta.edges.back() &&
        it.alpha.edges.back() == g.special_edge(g.edge(it.alpha.edges.back()).src)) {
      int sp = it.alpha.edges.back();
      int v = g.edge(sp).src;
      Path a0 = it.alpha, b0 = it.beta;
      a0.edges.pop_back();
      b0.edges.pop_back();
      if (a0.edges.empty()) a0 = Path::vertex(v);
      if (b0.edges.empty()) b0 = Path::vertex(v);
      todo.push_back({a0, b0, it.k});
      for (int f : g.out_edges(v)) {
        if (f == sp) continue;
        Path af = a0, bf = b0;
        af.edges.push_back(f);
        bf.edges.push_back(f);
        out.add_term(af, bf, x.field().neg(it.k));
      }
    } else {
      out.add_term(it.alpha, it.beta, it.k);
    }
  }
  return out;
}

struct GaugeMap {
  Cycle cycle;
  // scale lives in the element's field; invertibility is checked on use
};

// sigma_{e,a}: scales each monomial by a^(#e1(alpha) - #e1(beta)).
template <class F>
LpaElement<F> gauge_apply(const LpaElement<F>& x, const Cycle& e, const typename F::Elem& a) {
  const F& f = x.field();
  if (f.is_zero(a)) fail(ErrKind::NonInvertibleScale, "gauge scale must be invertible");
  int e1 = e.first_edge();
  auto count = [&](const Path& p) {
    long n = 0;
    for (int ed : p.edges) n += ed == e1;
    return n;
  };
  auto a_inv = f.inv(a);
  LpaElement<F> out(x.graph(), f);
  for (const auto& [key, k] : x.terms()) {
    long d = count(key.first) - count(key.second);
    auto scale = f.one();
    auto base = d >= 0 ? a : a_inv;
    for (long i = 0; i < (d >= 0 ? d : -d); ++i) scale = f.mul(scale, base);
    out.add_term(key.first, key.second, f.mul(k, scale));
  }
  return out;
}

// p_n e^n + ... + p_1 e + p_0 s(e).
template <class F>
LpaElement<F> eval_poly_at_cycle(const Graph* g, const F& f, const Poly<F>& p, const Cycle& e) {
  LpaElement<F> out(g, f);
  int v = e.base(*g);
  Path power = Path::vertex(v);
  for (int i = 0; i <= p.degree(); ++i) {
    out.add_term(power, Path::vertex(v), p.c[i]);
    power = concat(*g, power, e.path);
  }
  return out;
}

// --- expression parser ------------------------------------------------
//
//   element := ['-'] term (('+'|'-') term)*
//   term    := [scalar] atom+          juxtaposition = product
//   atom    := edge-id | edge-id'*' | vertex-id | '(' element ')'
//
// The ghost marker is a postfix '*' glued to the edge id.
namespace detail {

struct ExprToken {
  enum Kind { Id, GhostId, Scalar, Plus, Minus, LParen, RParen, End } kind;
  std::string text;
};

inline std::vector<ExprToken> expr_lex(const std::string& text) {
  std::vector<ExprToken> out;
  size_t i = 0;
  auto is_id_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '+') {
      out.push_back({ExprToken::Plus, "+"});
      ++i;
    } else if (c == '-') {
      out.push_back({ExprToken::Minus, "-"});
      ++i;
    } else if (c == '(') {
      out.push_back({ExprToken::LParen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({ExprToken::RParen, ")"});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (i < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
        num += text[i++];
      out.push_back({ExprToken::Scalar, num});
    } else if (is_id_char(c)) {
      std::string id;
      while (i < text.size() && is_id_char(text[i])) id += text[i++];
      if (i < text.size() && text[i] == '*') {
        ++i;
        out.push_back({ExprToken::GhostId, id});
      } else {
        out.push_back({ExprToken::Id, id});
      }
    } else {
      fail(ErrKind::SyntaxError, std::string("unexpected character '") + c + "' in expression");
    }
  }
  out.push_back({ExprToken::End, ""});
  return out;
}

template <class F>
class ExprParser {
 public:
  ExprParser(const Graph* g, const F& f, const std::string& text)
      : g_(g), f_(f), toks_(expr_lex(text)) {}

  LpaElement<F> parse() {
    auto x = parse_element();
    if (cur().kind != ExprToken::End) fail(ErrKind::SyntaxError, "trailing input in expression");
    return x;
  }

 private:
  const ExprToken& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }

  LpaElement<F> parse_element() {
    bool neg = false;
    while (cur().kind == ExprToken::Minus || cur().kind == ExprToken::Plus) {
      neg ^= cur().kind == ExprToken::Minus;
      advance();
    }
    auto acc = parse_term();
    if (neg) acc = acc.scaled(f_.neg(f_.one()));
    while (cur().kind == ExprToken::Plus || cur().kind == ExprToken::Minus) {
      bool minus = cur().kind == ExprToken::Minus;
      advance();
      while (cur().kind == ExprToken::Minus || cur().kind == ExprToken::Plus) {
        minus ^= cur().kind == ExprToken::Minus;
        advance();
      }
      auto t = parse_term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  LpaElement<F> parse_term() {
    auto coef = f_.one();
    if (cur().kind == ExprToken::Scalar) {
      coef = f_.parse(cur().text);
      advance();
    }
    bool have = false;
    LpaElement<F> acc(g_, f_);
    while (true) {
      auto k = cur().kind;
      if (k != ExprToken::Id && k != ExprToken::GhostId && k != ExprToken::LParen) break;
      auto atom = parse_atom();
      acc = have ? checked_product(acc, atom) : atom;
      have = true;
    }
    if (!have) fail(ErrKind::SyntaxError, "term needs at least one vertex, edge, or ghost edge");
    return acc.scaled(coef);
  }

  LpaElement<F> parse_atom() {
    if (cur().kind == ExprToken::LParen) {
      advance();
      auto x = parse_element();
      if (cur().kind != ExprToken::RParen) fail(ErrKind::SyntaxError, "missing ')'");
      advance();
      return x;
    }
    const std::string id = cur().text;
    bool ghost = cur().kind == ExprToken::GhostId;
    advance();
    if (g_->has_edge(id) || g_->has_vertex(id)) return atom_for(id, ghost);
    // ids may be glued ("g'g'*"); segment into known ids, the ghost marker
    // binding to the last segment only
    auto segs = segment_ids(id);
    if (segs.empty()) fail(ErrKind::UnknownId, "'" + id + "' is neither an edge nor a vertex");
    auto acc = atom_for(segs[0], ghost && segs.size() == 1);
    for (size_t i = 1; i < segs.size(); ++i)
      acc = checked_product(acc, atom_for(segs[i], ghost && i + 1 == segs.size()));
    return acc;
  }

  LpaElement<F> atom_for(const std::string& id, bool ghost) {
    if (g_->has_edge(id)) {
      Path p = make_path(*g_, {g_->edge_index(id)});
      return ghost ? LpaElement<F>::ghost_path(g_, f_, p) : LpaElement<F>::real_path(g_, f_, p);
    }
    if (ghost) fail(ErrKind::SyntaxError, "ghost marker on vertex '" + id + "'");
    return LpaElement<F>::vertex(g_, f_, g_->vertex(id));
  }

  // Split a word into known vertex/edge ids (first-match DP, preferring
  // longer segments); empty result when no segmentation exists.
  std::vector<std::string> segment_ids(const std::string& word) {
    const size_t n = word.size();
    std::vector<int> next(n + 1, -1);  // next[i] = length of segment at i
    std::vector<char> ok(n + 1, 0);
    ok[n] = 1;
    for (size_t i = n; i-- > 0;)
      for (size_t len = n - i; len >= 1; --len) {
        std::string part = word.substr(i, len);
        if ((g_->has_edge(part) || g_->has_vertex(part)) && ok[i + len]) {
          ok[i] = 1;
          next[i] = static_cast<int>(len);
          break;
        }
      }
    std::vector<std::string> out;
    if (!ok[0]) return out;
    for (size_t i = 0; i < n; i += next[i]) out.push_back(word.substr(i, next[i]));
    return out;
  }

  // Product that reports NotComposable when a single-monomial junction
  // fails at the vertex level (real-real or ghost-ghost concatenation
  // mismatch); CK1 delta zeroes pass through as 0.
  LpaElement<F> checked_product(const LpaElement<F>& x, const LpaElement<F>& y) {
    if (x.terms().size() == 1 && y.terms().size() == 1) {
      const auto& kx = x.terms().begin()->first;
      const auto& ky = y.terms().begin()->first;
      Path a, b;
      if (detail::monomial_product(*g_, kx.first, kx.second, ky.first, ky.second, &a, &b) ==
          detail::MonProd::JunctionMismatch)
        fail(ErrKind::NotComposable,
             "cannot compose '" + path_str(*g_, kx.first) + (kx.second.is_vertex() ? "" : "*") +
                 "' with next factor");
    }
    return multiply(x, y);
  }

  const Graph* g_;
  F f_;
  std::vector<ExprToken> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

template <class F>
LpaElement<F> element_parse(const Graph* g, const F& f, const std::string& text) {
  return detail::ExprParser<F>(g, f, text).parse();
}

// Deterministic rendering in the expression grammar.
template <class F>
std::string element_str(const LpaElement<F>& x) {
  if (x.is_zero()) return "0";
  const Graph& g = *x.graph();
  const F& f = x.field();
  std::string out;
  for (const auto& [key, k] : x.terms()) {
    std::string cs = f.str(k);
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    bool unit = cs == "1";
    if (!unit) out += cs + " ";
    if (key.first.is_vertex() && key.second.is_vertex()) {
      out += path_str(g, key.first);
    } else {
      std::string part;
      if (!key.first.is_vertex()) part = path_str(g, key.first);
      if (!key.second.is_vertex()) {
        std::string ghost;
        for (auto it = key.second.edges.rbegin(); it != key.second.edges.rend(); ++it) {
          if (!ghost.empty()) ghost += ' ';
          ghost += g.edge(*it).id + "*";
        }
        part += (part.empty() ? "" : " ") + ghost;
      }
      out += part;
    }
  }
  return out;
}

}  // namespace lpa
