#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "lpa/errors.hpp"

namespace lpa {

// Field descriptors. A field type F carries the context needed to operate
// on its element type F::Elem; elements themselves are plain values.
// Generic code (polynomials, matrices, algebra elements) is templated on F
// and funnels every operation through the descriptor.

struct RationalField {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long n) const { return Elem(n); }

  Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
  Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
  Elem neg(const Elem& a) const { return Elem(-a); }
  Elem inv(const Elem& a) const {
    if (a == 0) fail(ErrKind::DivisionByZero, "1/0 in Q");
    return Elem(1 / a);
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string str(const Elem& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }
  long characteristic() const { return 0; }

  // "a" or "a/b" with optional sign.
  Elem parse(const std::string& s) const {
    Elem v;
    if (s.empty() || v.set_str(s, 10) != 0)
      fail(ErrKind::SyntaxError, "bad rational literal '" + s + "'");
    if (v.get_den() == 0) fail(ErrKind::DivisionByZero, "zero denominator in '" + s + "'");
    v.canonicalize();
    return v;
  }

  bool operator==(const RationalField&) const { return true; }
};

struct PrimeField {
  using Elem = std::int64_t;

  std::int64_t p = 0;

  explicit PrimeField(std::int64_t prime = 2) : p(prime) {
    if (p < 2) fail(ErrKind::SyntaxError, "field characteristic must be a prime >= 2");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) fail(ErrKind::SyntaxError, std::to_string(p) + " is not prime");
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(long n) const {
    Elem v = n % p;
    return v < 0 ? v + p : v;
  }

  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return ((a - b) % p + p) % p; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<__int128>(a) * b % p);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    if (a == 0) fail(ErrKind::DivisionByZero, "1/0 in F" + std::to_string(p));
    // extended Euclid
    Elem r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      Elem q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      s0 -= q * s1;
      std::swap(s0, s1);
    }
    return ((s0 % p) + p) % p;
  }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string str(Elem a) const { return std::to_string(a); }
  std::string name() const { return "F" + std::to_string(p); }
  long characteristic() const { return static_cast<long>(p); }

  Elem parse(const std::string& s) const {
    if (s.find('/') != std::string::npos) {
      auto num = s.substr(0, s.find('/'));
      auto den = s.substr(s.find('/') + 1);
      Elem d = parse(den);
      if (d == 0)
        fail(ErrKind::NonInvertibleDenominator, "denominator '" + den + "' is 0 mod " +
                                                    std::to_string(p));
      return mul(parse(num), inv(d));
    }
    try {
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) fail(ErrKind::SyntaxError, "bad residue literal '" + s + "'");
      return from_int(static_cast<long>(v));
    } catch (const std::invalid_argument&) {
      fail(ErrKind::SyntaxError, "bad residue literal '" + s + "'");
    } catch (const std::out_of_range&) {
      fail(ErrKind::SyntaxError, "residue literal '" + s + "' out of range");
    }
  }

  bool operator==(const PrimeField& o) const { return p == o.p; }
};

}  // namespace lpa
