#pragma once

#include <map>
#include <string>

#include "lpa/element.hpp"
#include "lpa/extension.hpp"
#include "lpa/graph.hpp"

namespace lpa {

// Twisted Chen module V^p_[e^inf] (CF = ExtField<F>, twist unit xbar) or
// scalar-twisted V^{sigma_{e,a}}_[e^inf] (CF = F, twist unit a; a = 1 is
// the untwisted case). Vectors are finite CF-combinations keyed by
// canonical finite representatives mu (r(mu) = s(e), mu not right
// divisible by e); the vertex s(e) stands for e^inf itself.
template <class F, class CF>
class ChenModule {
 public:
  using Coef = typename CF::Elem;
  using Vec = std::map<Path, Coef>;

  ChenModule(const Graph* g, const Cycle& e, const F& base, const CF& coeff,
             const Coef& twist_unit)
      : g_(g), e_(e), base_(base), coeff_(coeff), twist_(twist_unit) {
    if (coeff_.is_zero(twist_))
      fail(ErrKind::NonInvertibleScale, "twist unit must be invertible");
  }

  const Graph* graph() const { return g_; }
  const Cycle& cycle() const { return e_; }
  const F& base_field() const { return base_; }
  const CF& coeff_field() const { return coeff_; }
  const Coef& twist_unit() const { return twist_; }

  bool same_descriptor(const ChenModule& o) const {
    return *g_ == *o.g_ && e_ == o.e_ && base_ == o.base_ && coeff_ == o.coeff_ &&
           coeff_.eq(twist_, o.twist_);
  }

  // kappa * mu e^inf with trailing e-powers stripped (they change nothing
  // about the infinite path).
  Vec canonical_vector(const Path& mu, const Coef& kappa) const {
    auto [stripped, k] = strip_cycle_power(*g_, mu, e_);
    (void)k;
    Vec v;
    if (!coeff_.is_zero(kappa)) v.emplace(stripped, kappa);
    return v;
  }

  Vec zero() const { return {}; }

  Vec generator() const { return canonical_vector(Path::vertex(e_.base(*g_)), coeff_.one()); }

  void add_into(Vec& acc, const Path& key, const Coef& k) const {
    if (coeff_.is_zero(k)) return;
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, k);
    } else {
      it->second = coeff_.add(it->second, k);
      if (coeff_.is_zero(it->second)) acc.erase(it);
    }
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec out = a;
    for (const auto& [key, k] : b) add_into(out, key, k);
    return out;
  }

  Vec scale(const Vec& a, const Coef& k) const {
    Vec out;
    for (const auto& [key, c] : a) add_into(out, key, coeff_.mul(c, k));
    return out;
  }

  Vec sub(const Vec& a, const Vec& b) const {
    return add(a, scale(b, coeff_.neg(coeff_.one())));
  }

  bool is_zero(const Vec& a) const { return a.empty(); }

  bool equals(const Vec& a, const Vec& b) const {
    if (a.size() != b.size()) return false;
    auto it = b.begin();
    for (const auto& [key, k] : a) {
      if (key != it->first || !coeff_.eq(k, it->second)) return false;
      ++it;
    }
    return true;
  }

  // Action of a base-field element via restriction of scalars: each
  // monomial acts by the plain Chen action scaled by
  // twist^{#e1(alpha) - #e1(beta)} (that is, by sigma_{e,u}(alpha beta*)).
  Vec act(const LpaElement<F>& x, const Vec& w) const {
    if (!(*x.graph() == *g_)) fail(ErrKind::GraphMismatch, "element over a different graph");
    if (!(x.field() == base_)) fail(ErrKind::FieldMismatch, "element over a different base field");
    return act_impl(x, w, [this](const typename F::Elem& k) { return embed_scalar(coeff_, k); });
  }

  // Raw entry point over the coefficient field; used by test oracles and
  // truncated linear algebra, not part of the module contract.
  Vec act_cf(const LpaElement<CF>& x, const Vec& w) const {
    if (!(*x.graph() == *g_)) fail(ErrKind::GraphMismatch, "element over a different graph");
    return act_impl(x, w, [](const Coef& k) { return k; });
  }

 private:
  template <class EF, class Embed>
  Vec act_impl(const LpaElement<EF>& x, const Vec& w, Embed embed) const {
    const Graph& g = *g_;
    const int e1 = e_.first_edge();
    const int N = e_.length();
    Vec out;
    for (const auto& [key, k] : x.terms()) {
      const Path& alpha = key.first;
      const Path& beta = key.second;
      long t = 0;
      for (int ed : alpha.edges) t += ed == e1;
      for (int ed : beta.edges) t -= ed == e1;
      for (const auto& [mu, kappa] : w) {
        // unroll mu e^inf far enough to match beta as a prefix
        int need = beta.length() - mu.length();
        int copies = need <= 0 ? 0 : (need + N - 1) / N;
        Path full = mu;
        for (int i = 0; i < copies; ++i) full = concat(g, full, e_.path);
        if (beta.is_vertex()) {
          if (beta.at != full.source()) continue;
        } else {
          auto wdiv = divides(g, beta, full, Side::Left);
          if (!wdiv) continue;
          full = wdiv->quotient;
        }
        // now full e^inf is the remaining tail; prepend alpha
        if (alpha.range(g) != full.source()) continue;
        Path res = concat(g, alpha, full);
        auto [stripped, power] = strip_cycle_power(g, res, e_);
        (void)power;
        Coef scale = coeff_.mul(embed(k), twist_pow(t));
        add_into(out, stripped, coeff_.mul(scale, kappa));
      }
    }
    return out;
  }

  Coef twist_pow(long t) const {
    Coef base = t >= 0 ? twist_ : coeff_.inv(twist_);
    Coef acc = coeff_.one();
    for (long i = 0; i < (t >= 0 ? t : -t); ++i) acc = coeff_.mul(acc, base);
    return acc;
  }

  const Graph* g_;
  Cycle e_;
  F base_;
  CF coeff_;
  Coef twist_;
};

// Vector literal: `k1 * [mu1] + k2 * [mu2]` with mu a whitespace-separated
// edge sequence or a vertex id, and k a polynomial in `xbar` (or a plain
// scalar for the untwisted case).
template <class F, class CF>
typename ChenModule<F, CF>::Vec vector_parse(const ChenModule<F, CF>& m, const std::string& text) {
  const Graph& g = *m.graph();
  const CF& cf = m.coeff_field();
  typename ChenModule<F, CF>::Vec out;
  size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip();
  if (i < text.size() && text[i] == '0' && i + 1 == text.size()) return out;
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) {
      if (first) fail(ErrKind::SyntaxError, "empty vector literal");
      break;
    }
    bool neg = false;
    if (!first) {
      if (text[i] != '+' && text[i] != '-')
        fail(ErrKind::SyntaxError, "expected '+' or '-' between vector terms");
      neg = text[i] == '-';
      ++i;
      skip();
    } else if (text[i] == '-') {
      neg = true;
      ++i;
      skip();
    }
    first = false;
    // optional coefficient followed by '*'
    auto star = text.find('*', i);
    auto bracket = text.find('[', i);
    if (bracket == std::string::npos) fail(ErrKind::SyntaxError, "vector term needs '[path]'");
    auto coef = cf.one();
    if (star != std::string::npos && star < bracket) {
      coef = cf.parse(text.substr(i, star - i));
      i = star + 1;
      skip();
    }
    if (text[i] != '[') fail(ErrKind::SyntaxError, "vector term needs '[path]'");
    auto close = text.find(']', i);
    if (close == std::string::npos) fail(ErrKind::SyntaxError, "missing ']'");
    std::string inner = text.substr(i + 1, close - i - 1);
    i = close + 1;
    std::istringstream ps(inner);
    std::string id;
    std::vector<std::string> ids;
    while (ps >> id) ids.push_back(id);
    Path mu;
    if (ids.empty()) fail(ErrKind::SyntaxError, "empty path in vector literal");
    if (ids.size() == 1 && g.has_vertex(ids[0])) {
      mu = Path::vertex(g.vertex(ids[0]));
    } else {
      std::vector<int> edges;
      for (const auto& s : ids) edges.push_back(g.edge_index(s));
      mu = make_path(g, edges);
    }
    if (neg) coef = cf.neg(coef);
    for (const auto& [key, k] : m.canonical_vector(mu, coef)) m.add_into(out, key, k);
  }
  return out;
}

template <class F, class CF>
std::string vector_str(const ChenModule<F, CF>& m, const typename ChenModule<F, CF>::Vec& v) {
  if (v.empty()) return "0";
  const CF& cf = m.coeff_field();
  std::string out;
  for (const auto& [key, k] : v) {
    if (!out.empty()) out += " + ";
    std::string cs = cf.str(k);
    if (cs != "1") out += cs + " * ";
    out += "[" + path_str(*m.graph(), key) + "]";
  }
  return out;
}

}  // namespace lpa
