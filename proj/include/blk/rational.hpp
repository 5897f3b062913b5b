#pragma once
// Arbitrary-precision rational scalars and small helpers on top of GMP.
// Rational values are always canonical: reduced, positive denominator
// (mpq_class maintains this after arithmetic; we canonicalize on parse).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace blk {

using Int = mpz_class;
using Rational = mpq_class;

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(const Int& z) { return sgn(z); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Parses "p", "-p", or "p/q" with arbitrary-precision parts.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  try {
    q = Rational(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// Canonicalized fraction (GMP two-argument construction does not reduce).
inline Rational make_rational(const Int& num, const Int& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& q) {
  return q.get_str();  // "p" or "p/q", canonical
}

inline Rational pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  Rational base = q;
  if (e < 0) {
    if (base == 0) throw std::domain_error("0^negative");
    base = Rational(base.get_den(), base.get_num());
    base.canonicalize();
    e = -e;
  }
  Rational acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline long lcm_long(long a, long b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
  if (!r.fits_slong_p()) throw std::overflow_error("lcm overflow");
  return r.get_si();
}

inline long gcd_long(long a, long b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
  return r.get_si();
}

}  // namespace blk
