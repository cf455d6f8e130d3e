#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/fields.hpp"

namespace lpa {

// Dense univariate polynomial over a field descriptor F, coefficients
// ascending. The zero polynomial is the empty coefficient list; degree()
// returns -1 for it.
template <class F>
struct Poly {
  std::vector<typename F::Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

template <class F>
Poly<F> poly_trim(const F& f, Poly<F> p) {
  while (!p.c.empty() && f.is_zero(p.c.back())) p.c.pop_back();
  return p;
}

template <class F>
Poly<F> poly_const(const F& f, const typename F::Elem& a) {
  Poly<F> p;
  if (!f.is_zero(a)) p.c.push_back(a);
  return p;
}

template <class F>
Poly<F> poly_x(const F& f) {
  return Poly<F>{{f.zero(), f.one()}};
}

template <class F>
typename F::Elem poly_coef(const F& f, const Poly<F>& p, int i) {
  return i >= 0 && i < static_cast<int>(p.c.size()) ? p.c[i] : f.zero();
}

template <class F>
bool poly_eq(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!f.eq(a.c[i], b.c[i])) return false;
  return true;
}

template <class F>
Poly<F> poly_add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> out;
  size_t n = std::max(a.c.size(), b.c.size());
  for (size_t i = 0; i < n; ++i)
    out.c.push_back(f.add(poly_coef(f, a, static_cast<int>(i)), poly_coef(f, b, static_cast<int>(i))));
  return poly_trim(f, out);
}

template <class F>
Poly<F> poly_neg(const F& f, const Poly<F>& a) {
  Poly<F> out = a;
  for (auto& x : out.c) x = f.neg(x);
  return out;
}

template <class F>
Poly<F> poly_sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return poly_add(f, a, poly_neg(f, b));
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly<F> out;
  out.c.assign(a.c.size() + b.c.size() - 1, f.zero());
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = f.add(out.c[i + j], f.mul(a.c[i], b.c[j]));
  return poly_trim(f, out);
}

template <class F>
Poly<F> poly_scale(const F& f, const Poly<F>& a, const typename F::Elem& k) {
  Poly<F> out = a;
  for (auto& x : out.c) x = f.mul(x, k);
  return poly_trim(f, out);
}

// Division with remainder; divisor must be nonzero.
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& f, Poly<F> a, const Poly<F>& b) {
  if (b.is_zero()) fail(ErrKind::DivisionByZero, "polynomial division by zero");
  Poly<F> q;
  q.c.assign(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, f.zero());
  auto lead_inv = f.inv(b.c.back());
  while (a.degree() >= b.degree()) {
    int shift = a.degree() - b.degree();
    auto k = f.mul(a.c.back(), lead_inv);
    q.c[shift] = k;
    for (int i = 0; i <= b.degree(); ++i)
      a.c[shift + i] = f.sub(a.c[shift + i], f.mul(k, b.c[i]));
    a = poly_trim(f, a);
    if (a.is_zero()) break;
  }
  return {poly_trim(f, q), a};
}

template <class F>
Poly<F> poly_mod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return poly_divmod(f, a, b).second;
}

template <class F>
Poly<F> poly_monic(const F& f, const Poly<F>& a) {
  if (a.is_zero()) return a;
  return poly_scale(f, a, f.inv(a.c.back()));
}

template <class F>
Poly<F> poly_gcd(const F& f, Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    a = poly_mod(f, a, b);
    std::swap(a, b);
  }
  return poly_monic(f, a);
}

template <class F>
typename F::Elem poly_eval(const F& f, const Poly<F>& p, const typename F::Elem& x) {
  auto acc = f.zero();
  for (int i = p.degree(); i >= 0; --i) acc = f.add(f.mul(acc, x), p.c[i]);
  return acc;
}

// Render with the given variable name, descending terms.
template <class F>
std::string poly_str(const F& f, const Poly<F>& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    if (f.is_zero(p.c[i])) continue;
    std::string cs = f.str(p.c[i]);
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (i == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + " ";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// Polynomial grammar: signed terms `[coef][var[^k]]`, coef a rational
// `a/b`, an integer, or a prime-field residue; whitespace ignored.
template <class F>
Poly<F> poly_parse(const F& f, const std::string& text, const std::string& var = "x") {
  Poly<F> out;
  size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip();
  if (i == text.size()) fail(ErrKind::SyntaxError, "empty polynomial");
  bool first = true;
  while (i < text.size()) {
    bool neg = false;
    skip();
    if (text[i] == '+' || text[i] == '-') {
      neg = text[i] == '-';
      ++i;
      skip();
    } else if (!first) {
      fail(ErrKind::SyntaxError, "expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;
    // coefficient
    std::string num;
    while (i < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
      num += text[i++];
    skip();
    // variable part
    int power = 0;
    if (text.compare(i, var.size(), var) == 0) {
      i += var.size();
      power = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        std::string exp;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) exp += text[i++];
        if (exp.empty()) fail(ErrKind::SyntaxError, "missing exponent after '^'");
        power = std::stoi(exp);
      }
    }
    if (num.empty() && power == 0)
      fail(ErrKind::SyntaxError, "expected term at position " + std::to_string(i));
    auto k = num.empty() ? f.one() : f.parse(num);
    if (neg) k = f.neg(k);
    if (power >= static_cast<int>(out.c.size())) out.c.resize(power + 1, f.zero());
    out.c[power] = f.add(out.c[power], k);
    skip();
  }
  return poly_trim(f, out);
}

// --- irreducibility ---------------------------------------------------

// x^(p^k) mod m over F_p, by iterated Frobenius.
inline Poly<PrimeField> frobenius_power(const PrimeField& f, const Poly<PrimeField>& m, int k) {
  auto powmod = [&](Poly<PrimeField> base, std::int64_t e) {
    Poly<PrimeField> acc = poly_const(f, f.one());
    while (e > 0) {
      if (e & 1) acc = poly_mod(f, poly_mul(f, acc, base), m);
      base = poly_mod(f, poly_mul(f, base, base), m);
      e >>= 1;
    }
    return acc;
  };
  Poly<PrimeField> h = poly_mod(f, poly_x(f), m);
  for (int i = 0; i < k; ++i) h = powmod(h, f.p);
  return h;
}

// Rabin's test: complete for prime fields.
inline bool is_irreducible(const PrimeField& f, const Poly<PrimeField>& p) {
  if (p.degree() < 1) fail(ErrKind::DegreeTooSmall, "irreducibility needs degree >= 1");
  Poly<PrimeField> m = poly_monic(f, p);
  int n = m.degree();
  if (n == 1) return true;
  auto xn = frobenius_power(f, m, n);
  if (!poly_eq(f, xn, poly_mod(f, poly_x(f), m))) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= r; ++d)
      if (r % d == 0) prime = false;
    if (!prime) continue;
    auto h = poly_sub(f, frobenius_power(f, m, n / r), poly_x(f));
    if (poly_gcd(f, m, h).degree() != 0) return false;
  }
  return true;
}

namespace detail {

// Primitive integer form of a rational polynomial.
inline std::vector<mpz_class> primitive_int_poly(const Poly<RationalField>& p) {
  mpz_class lcm_den = 1;
  for (const auto& c : p.c) lcm_den = lcm(lcm_den, c.get_den());
  std::vector<mpz_class> z;
  for (const auto& c : p.c) z.push_back(mpz_class(c.get_num() * (lcm_den / c.get_den())));
  mpz_class content = 0;
  for (const auto& v : z) content = gcd(content, v);
  if (content > 1)
    for (auto& v : z) v /= content;
  return z;
}

inline mpz_class int_poly_eval(const std::vector<mpz_class>& z, const mpz_class& x) {
  mpz_class acc = 0;
  for (int i = static_cast<int>(z.size()) - 1; i >= 0; --i) acc = acc * x + z[i];
  return acc;
}

inline std::vector<mpz_class> all_divisors(const mpz_class& n) {
  mpz_class a = abs(n);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  size_t pos = out.size();
  for (size_t i = 0; i < pos; ++i) out.push_back(-out[i]);
  return out;
}

inline bool has_rational_root(const RationalField& f, const Poly<RationalField>& p) {
  auto z = primitive_int_poly(p);
  if (z.front() == 0) return true;  // x divides
  for (const auto& r : all_divisors(z.front()))
    for (const auto& s : all_divisors(z.back())) {
      if (s < 0) continue;
      mpq_class root(r, s);
      root.canonicalize();
      if (f.is_zero(poly_eval(f, p, root))) return true;
    }
  return false;
}

// Kronecker factor search: complete for primitive integer polynomials of
// degree <= 8. Looks for a nonconstant divisor of degree <= deg/2 by
// interpolating through divisor tuples of sampled values.
inline bool kronecker_reducible(const Poly<RationalField>& p) {
  RationalField f;
  auto z = primitive_int_poly(p);
  int n = static_cast<int>(z.size()) - 1;
  std::vector<mpz_class> points;
  for (int k = 0; static_cast<int>(points.size()) <= n / 2; ++k) {
    points.push_back(k);
    if (k > 0 && static_cast<int>(points.size()) <= n / 2) points.push_back(-k);
  }
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<mpz_class> pts(points.begin(), points.begin() + d + 1);
    std::vector<std::vector<mpz_class>> divs;
    bool root = false;
    for (const auto& a : pts) {
      mpz_class v = int_poly_eval(z, a);
      if (v == 0) return true;  // linear factor x - a
      divs.push_back(all_divisors(v));
      root = root || divs.back().empty();
    }
    (void)root;
    // iterate over divisor tuples
    std::vector<size_t> idx(d + 1, 0);
    while (true) {
      // Lagrange interpolation of candidate values
      Poly<RationalField> cand;
      for (int i = 0; i <= d; ++i) {
        Poly<RationalField> basis = poly_const(f, f.one());
        mpq_class denom = 1;
        for (int j = 0; j <= d; ++j) {
          if (j == i) continue;
          Poly<RationalField> lin{{mpq_class(-pts[j]), mpq_class(1)}};
          basis = poly_mul(f, basis, lin);
          denom *= mpq_class(pts[i] - pts[j]);
        }
        basis = poly_scale(f, basis, mpq_class(divs[i][idx[i]]) / denom);
        cand = poly_add(f, cand, basis);
      }
      if (cand.degree() >= 1) {
        auto [q, r] = poly_divmod(f, p, cand);
        if (r.is_zero() && q.degree() >= 1) return true;
      }
      // next tuple
      int pos = 0;
      while (pos <= d) {
        if (++idx[pos] < divs[pos].size()) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos > d) break;
    }
  }
  return false;
}

}  // namespace detail

// Exact verdict over Q. Fast sufficient checks first (rational roots,
// irreducibility mod a small prime); complete Kronecker search up to
// degree 8, DegreeTooLarge beyond when the quick checks are inconclusive.
inline bool is_irreducible(const RationalField& f, const Poly<RationalField>& p) {
  if (p.degree() < 1) fail(ErrKind::DegreeTooSmall, "irreducibility needs degree >= 1");
  int n = p.degree();
  if (n == 1) return true;
  if (detail::has_rational_root(f, p)) return false;
  if (n <= 3) return true;  // no root and degree <= 3
  auto z = detail::primitive_int_poly(p);
  for (long ell : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
    if (z.back() % ell == 0) continue;
    PrimeField fp(ell);
    Poly<PrimeField> pm;
    for (const auto& c : z)
      pm.c.push_back(fp.from_int(static_cast<long>(mpz_class(c % ell).get_si())));
    pm = poly_trim(fp, pm);
    if (pm.degree() == n && is_irreducible(fp, pm)) return true;
  }
  if (n > 8)
    fail(ErrKind::DegreeTooLarge, "degree " + std::to_string(n) +
                                      " > 8 over Q and quick checks are inconclusive");
  return !detail::kronecker_reducible(p);
}

// Scale an irreducible p (deg >= 2, p(0) != 0) by a unit so the constant
// term is exactly -1.
template <class F>
Poly<F> make_basic(const F& f, const Poly<F>& p) {
  if (p.degree() < 2) fail(ErrKind::DegreeTooSmall, "basic polynomials have degree >= 2");
  if (f.is_zero(p.c[0])) fail(ErrKind::ZeroConstantTerm, "constant term is zero");
  if (!is_irreducible(f, p)) fail(ErrKind::NotIrreducible, "polynomial is not irreducible");
  return poly_scale(f, p, f.neg(f.inv(p.c[0])));
}

template <class F>
bool is_basic_irreducible(const F& f, const Poly<F>& p) {
  return p.degree() >= 2 && !p.is_zero() && f.eq(p.c[0], f.neg(f.one())) && is_irreducible(f, p);
}

}  // namespace lpa
