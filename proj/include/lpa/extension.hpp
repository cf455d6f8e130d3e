#pragma once

#include <vector>

#include "lpa/errors.hpp"
#include "lpa/polynomial.hpp"

namespace lpa {

// Simple algebraic extension K' = K[x]/<p(x)> for a basic irreducible p.
// Elements are residue coefficient vectors of length exactly deg p.
template <class F>
struct ExtField {
  using Elem = std::vector<typename F::Elem>;

  F base;
  Poly<F> mod;  // basic irreducible: deg >= 2, constant term -1

  ExtField(const F& base_field, const Poly<F>& p) : base(base_field), mod(p) {
    if (!is_basic_irreducible(base, p))
      fail(ErrKind::NotBasic, "defining polynomial must be basic irreducible");
  }

  int ext_degree() const { return mod.degree(); }

  Elem zero() const { return Elem(ext_degree(), base.zero()); }
  Elem one() const { return embed(base.one()); }
  Elem from_int(long n) const { return embed(base.from_int(n)); }
  Elem embed(const typename F::Elem& a) const {
    Elem v(ext_degree(), base.zero());
    v[0] = a;
    return v;
  }
  Elem xbar() const {
    Elem v(ext_degree(), base.zero());
    v[1] = base.one();
    return v;
  }

  Elem from_poly(const Poly<F>& p) const {
    Poly<F> r = poly_mod(base, p, mod);
    Elem v(ext_degree(), base.zero());
    for (int i = 0; i <= r.degree(); ++i) v[i] = r.c[i];
    return v;
  }
  Poly<F> to_poly(const Elem& a) const { return poly_trim(base, Poly<F>{a}); }

  void check(const Elem& a) const {
    if (static_cast<int>(a.size()) != ext_degree())
      fail(ErrKind::MixedExtensions, "residue vector length does not match deg p");
  }

  Elem add(const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    Elem v = a;
    for (size_t i = 0; i < v.size(); ++i) v[i] = base.add(v[i], b[i]);
    return v;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem neg(const Elem& a) const {
    check(a);
    Elem v = a;
    for (auto& x : v) x = base.neg(x);
    return v;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    return from_poly(poly_mul(base, to_poly(a), to_poly(b)));
  }
  Elem inv(const Elem& a) const {
    check(a);
    if (is_zero(a)) fail(ErrKind::DivisionByZero, "1/0 in " + name());
    // extended Euclid in K[x]
    Poly<F> r0 = mod, r1 = to_poly(a);
    Poly<F> s0, s1 = poly_const(base, base.one());
    while (!r1.is_zero()) {
      auto [q, r] = poly_divmod(base, r0, r1);
      r0 = r1;
      r1 = r;
      auto s2 = poly_sub(base, s0, poly_mul(base, q, s1));
      s0 = s1;
      s1 = s2;
    }
    // r0 is a unit (gcd) since mod is irreducible
    return from_poly(poly_scale(base, s0, base.inv(r0.c[0])));
  }

  bool is_zero(const Elem& a) const {
    check(a);
    for (const auto& x : a)
      if (!base.is_zero(x)) return false;
    return true;
  }
  bool eq(const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    for (size_t i = 0; i < a.size(); ++i)
      if (!base.eq(a[i], b[i])) return false;
    return true;
  }

  Elem pow(Elem a, long e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Elem acc = one();
    while (e > 0) {
      if (e & 1) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1;
    }
    return acc;
  }

  std::string str(const Elem& a) const {
    auto p = to_poly(a);
    if (p.is_zero()) return "0";
    std::string s = poly_str(base, p, "xbar");
    int terms = 0;
    for (const auto& c : p.c)
      if (!base.is_zero(c)) ++terms;
    return terms > 1 ? "(" + s + ")" : s;
  }
  std::string name() const { return base.name() + "[x]/<" + poly_str(base, mod) + ">"; }
  long characteristic() const { return base.characteristic(); }

  Elem parse(const std::string& s) const {
    // polynomial in `xbar`, e.g. "1/2 xbar^2 - 1"
    return from_poly(poly_parse(base, s, "xbar"));
  }

  bool operator==(const ExtField& o) const {
    return base == o.base && poly_eq(base, mod, o.mod);
  }
};

// xbar^{-1} = p_n xbar^{n-1} + ... + p_2 xbar + p_1 for basic irreducible p.
template <class F>
typename ExtField<F>::Elem xbar_inverse(const ExtField<F>& kp) {
  typename ExtField<F>::Elem v = kp.zero();
  for (int i = 1; i <= kp.mod.degree(); ++i) v[i - 1] = kp.mod.c[i];
  return v;
}

// Synthetic division of q (over K, evaluated in K') by (x - root); root
// must be a root of q in K'.
template <class F>
Poly<ExtField<F>> poly_quotient_linear(const ExtField<F>& kp, const Poly<F>& q,
                                       const typename ExtField<F>::Elem& root) {
  Poly<ExtField<F>> lifted;
  for (const auto& c : q.c) lifted.c.push_back(kp.embed(c));
  lifted = poly_trim(kp, lifted);
  if (lifted.is_zero()) fail(ErrKind::NotARoot, "zero polynomial has no linear quotient");
  Poly<ExtField<F>> r;
  r.c.assign(std::max(0, lifted.degree()), kp.zero());
  auto carry = kp.zero();
  for (int i = lifted.degree(); i >= 1; --i) {
    carry = kp.add(kp.mul(carry, root), lifted.c[i]);
    r.c[i - 1] = carry;
  }
  auto rem = kp.add(kp.mul(carry, root), lifted.c[0]);
  if (!kp.is_zero(rem)) fail(ErrKind::NotARoot, "value is not a root of the polynomial");
  return poly_trim(kp, r);
}

// Restriction-of-scalars helpers: a coefficient field viewed as a finite
// dimensional space over its base.
inline int base_degree(const RationalField&) { return 1; }
inline int base_degree(const PrimeField&) { return 1; }
template <class F>
int base_degree(const ExtField<F>& f) {
  return f.ext_degree();
}

inline std::vector<RationalField::Elem> base_coords(const RationalField&,
                                                    const RationalField::Elem& a) {
  return {a};
}
inline std::vector<PrimeField::Elem> base_coords(const PrimeField&, const PrimeField::Elem& a) {
  return {a};
}
template <class F>
std::vector<typename F::Elem> base_coords(const ExtField<F>& f,
                                          const typename ExtField<F>::Elem& a) {
  f.check(a);
  return a;
}

inline RationalField::Elem embed_scalar(const RationalField&, const RationalField::Elem& a) {
  return a;
}
inline PrimeField::Elem embed_scalar(const PrimeField&, const PrimeField::Elem& a) { return a; }
template <class F>
typename ExtField<F>::Elem embed_scalar(const ExtField<F>& f, const typename F::Elem& a) {
  return f.embed(a);
}

}  // namespace lpa
