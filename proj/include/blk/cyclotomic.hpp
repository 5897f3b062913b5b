#pragma once
// Exact elements of Q(zeta_n), stored as rational coefficient vectors over
// the full power basis zeta_n^0..zeta_n^{n-1} and kept in the canonical form
// "polynomial remainder mod Phi_n" (so coefficients at degree >= phi(n) are
// zero).  Equality is coefficient equality after promotion to a common order.
//
// The certified sign of a real element is decided exactly: an exact zero test
// first, then adaptive-precision MPFR evaluation with a conservative error
// bound that shrinks until it separates the value from zero.

#include <mpfr.h>

#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blk/rational.hpp"

namespace blk {

using ComplexF = std::complex<double>;

namespace detail {

// Integer polynomial helpers for the Phi_n cache (coeff[i] is the x^i coeff).
using ZPoly = std::vector<Int>;

inline ZPoly zpoly_div_exact(const ZPoly& num, const ZPoly& den) {
  // Exact long division, used only where divisibility is guaranteed.
  ZPoly r = num;
  if (den.empty() || den.back() == 0) throw std::logic_error("bad divisor");
  long dn = static_cast<long>(r.size()) - 1;
  long dd = static_cast<long>(den.size()) - 1;
  ZPoly q(dn - dd + 1, Int(0));
  for (long d = dn; d >= dd; --d) {
    if (r[d] == 0) continue;
    if (!mpz_divisible_p(r[d].get_mpz_t(), den.back().get_mpz_t()))
      throw std::logic_error("non-exact polynomial division");
    Int f = r[d] / den.back();
    q[d - dd] = f;
    for (long t = 0; t <= dd; ++t) r[d - dd + t] -= f * den[t];
  }
  for (const Int& c : r)
    if (c != 0) throw std::logic_error("nonzero remainder in exact division");
  return q;
}

}  // namespace detail

// Phi_n via x^n - 1 = prod_{d | n} Phi_d, cached.  Monic, integer coeffs.
// The cache is shared across threads (scan workers evaluate exactly), so it
// is guarded; entries are never erased, so returned references stay valid.
inline const detail::ZPoly& cyclotomic_polynomial(unsigned n) {
  static std::map<unsigned, detail::ZPoly> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n == 0) throw std::invalid_argument("order must be positive");
  detail::ZPoly num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  detail::ZPoly den{Int(1)};  // product of Phi_d over proper divisors d
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const detail::ZPoly& pd = cyclotomic_polynomial(d);
    detail::ZPoly prod(den.size() + pd.size() - 1, Int(0));
    for (size_t i = 0; i < den.size(); ++i)
      for (size_t j = 0; j < pd.size(); ++j) prod[i + j] += den[i] * pd[j];
    den = std::move(prod);
  }
  detail::ZPoly phi = detail::zpoly_div_exact(num, den);
  return cache.emplace(n, std::move(phi)).first->second;
}

inline unsigned phi_degree(unsigned n) {
  return static_cast<unsigned>(cyclotomic_polynomial(n).size() - 1);
}

class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_(1, Rational(0)) {}
  explicit Cyclotomic(const Rational& r, unsigned order = 1)
      : n_(order), c_(order, Rational(0)) {
    if (order == 0) throw std::invalid_argument("order must be positive");
    c_[0] = r;
    reduce();
  }
  explicit Cyclotomic(long v) : Cyclotomic(Rational(v)) {}

  // zeta_n^j
  static Cyclotomic root(unsigned n, long j = 1) {
    if (n == 0) throw std::invalid_argument("order must be positive");
    Cyclotomic z;
    z.n_ = n;
    z.c_.assign(n, Rational(0));
    long e = ((j % static_cast<long>(n)) + n) % n;
    z.c_[static_cast<size_t>(e)] = 1;
    z.reduce();
    return z;
  }
  static Cyclotomic zero(unsigned n = 1) { return Cyclotomic(Rational(0), n); }
  static Cyclotomic one(unsigned n = 1) { return Cyclotomic(Rational(1), n); }

  // From raw coefficients over zeta_n^0..zeta_n^{len-1} (any length; folded).
  static Cyclotomic from_coeffs(unsigned n, const std::vector<Rational>& raw) {
    Cyclotomic z;
    z.n_ = n;
    z.c_.assign(n, Rational(0));
    for (size_t k = 0; k < raw.size(); ++k) z.c_[k % n] += raw[k];
    z.reduce();
    return z;
  }

  unsigned order() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Cyclotomic promoted(unsigned m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("promotion needs n | m");
    Cyclotomic z;
    z.n_ = m;
    z.c_.assign(m, Rational(0));
    unsigned f = m / n_;
    for (unsigned k = 0; k < n_; ++k)
      if (c_[k] != 0) z.c_[static_cast<size_t>(k) * f] += c_[k];
    z.reduce();
    return z;
  }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }
  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("not a rational value");
    return c_[0];
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = lift(a, b);
    for (unsigned k = 0; k < x.n_; ++k) x.c_[k] += y.c_[k];
    return x;  // sum of reduced forms is reduced
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = lift(a, b);
    for (unsigned k = 0; k < x.n_; ++k) x.c_[k] -= y.c_[k];
    return x;
  }
  Cyclotomic operator-() const {
    Cyclotomic z = *this;
    for (auto& q : z.c_) q = -q;
    return z;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = lift(a, b);
    Cyclotomic z;
    z.n_ = x.n_;
    z.c_.assign(x.n_, Rational(0));
    for (unsigned i = 0; i < x.n_; ++i) {
      if (x.c_[i] == 0) continue;
      for (unsigned j = 0; j < y.n_; ++j) {
        if (y.c_[j] == 0) continue;
        z.c_[(i + j) % z.n_] += x.c_[i] * y.c_[j];  // zeta^n = 1 fold
      }
    }
    z.reduce();
    return z;
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    return a * b.inverse();
  }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    auto [x, y] = lift(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) {
    return !(a == b);
  }

  // Complex conjugation: zeta_n -> zeta_n^{n-1}.
  Cyclotomic conj() const {
    Cyclotomic z;
    z.n_ = n_;
    z.c_.assign(n_, Rational(0));
    for (unsigned k = 0; k < n_; ++k)
      if (c_[k] != 0) z.c_[(n_ - k) % n_] += c_[k];
    z.reduce();
    return z;
  }

  // Multiplicative inverse via the extended Euclidean algorithm in Q[x]
  // against Phi_n (gcd is 1 for nonzero reduced elements).
  Cyclotomic inverse() const {
    if (is_zero()) throw std::domain_error("division by zero cyclotomic");
    using QP = std::vector<Rational>;
    const auto& phi = cyclotomic_polynomial(n_);
    QP r0(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) r0[i] = Rational(phi[i]);
    QP r1(c_.begin(), c_.begin() + phi_degree(n_));
    trim(r1);
    QP s0{Rational(0)}, s1{Rational(1)};  // s tracks the coeff of *this
    while (!(r1.size() == 1 && r1[0] == 0) && !r1.empty()) {
      auto [q, rem] = qpoly_divmod(r0, r1);
      QP s2 = qpoly_sub(s0, qpoly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd (nonzero constant); inverse = s0 / r0 mod Phi
    if (r0.size() != 1 || r0[0] == 0)
      throw std::logic_error("cyclotomic inverse: gcd not a unit");
    Cyclotomic z;
    z.n_ = n_;
    z.c_.assign(n_, Rational(0));
    for (size_t k = 0; k < s0.size() && k < z.c_.size(); ++k)
      z.c_[k] = s0[k] / r0[0];
    z.reduce();
    return z;
  }

  Cyclotomic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic acc = Cyclotomic::one(n_), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  // |z|^2 = z * conj(z) (rational for sums of roots of unity by Q-linearity
  // only when the value lands in Q; returned as a cyclotomic in general).
  Cyclotomic norm_squared() const { return (*this) * conj(); }

  bool is_real() const { return *this == conj(); }

  // If z = e^{2 pi i a} with a = num/den in lowest terms, returns (num, den),
  // den >= 1, 0 <= num < den.  Roots of unity inside Q(zeta_n) are exactly
  // +-zeta_n^j, so 2n candidates decide membership.
  std::optional<std::pair<long, long>> as_root_of_unity() const {
    for (unsigned j = 0; j < n_; ++j) {
      Cyclotomic cand = root(n_, j);
      long num = j, den = n_;
      if (*this == cand) {
        long g = gcd_long(num, den);
        if (num == 0) return std::make_pair(0L, 1L);
        return std::make_pair(num / g, den / g);
      }
      // -zeta_n^j = e^{2 pi i (j/n + 1/2)}
      if (*this == -cand) {
        long nn = 2 * num + den, dd = 2 * den;  // (j/n + 1/2) over 2n
        nn %= dd;
        long g = gcd_long(nn == 0 ? dd : nn, dd);
        return std::make_pair(nn / g, dd / g);
      }
    }
    return std::nullopt;
  }

  ComplexF to_complex() const {
    // Double-precision evaluation through MPFR with guard bits.
    auto [re, im] = eval_mpfr(96);
    return ComplexF(re, im);
  }

  // Conversion honoring the accuracy contract
  // |result - exact| < 2^{1-precision} * (1 + |exact|).
  ComplexF to_complex(unsigned precision) const {
    auto [re, im] = eval_mpfr(precision + 32);
    return ComplexF(re, im);
  }

  // Exact sign of a real cyclotomic value: 0 iff exactly zero, else the sign
  // certified by interval-style refinement.
  int sign_certified() const {
    if (is_zero()) return 0;
    if (is_rational()) return sign_of(c_[0]);
    if (!is_real())
      throw std::domain_error("sign of a non-real cyclotomic value");
    Rational height(0);
    for (const auto& q : c_) height += abs(q);
    for (mpfr_prec_t prec = 128; prec <= (1 << 15); prec *= 2) {
      mpfr_t acc, t, pi, ang;
      mpfr_inits2(prec, acc, t, pi, ang, nullptr);
      mpfr_set_zero(acc, 1);
      mpfr_const_pi(pi, MPFR_RNDN);
      for (unsigned k = 0; k < n_; ++k) {
        if (c_[k] == 0) continue;
        mpfr_mul_si(ang, pi, 2 * static_cast<long>(k), MPFR_RNDN);
        mpfr_div_ui(ang, ang, n_, MPFR_RNDN);
        mpfr_cos(t, ang, MPFR_RNDN);
        mpfr_mul_q(t, t, c_[k].get_mpq_t(), MPFR_RNDN);
        mpfr_add(acc, acc, t, MPFR_RNDN);
      }
      // Conservative bound: each addend accurate to ~3 ulps of |c_k|,
      // accumulation adds <= n more.
      mpfr_t err;
      mpfr_init2(err, prec);
      mpfr_set_q(err, height.get_mpq_t(), MPFR_RNDU);
      mpfr_mul_ui(err, err, n_ + 8, MPFR_RNDU);
      mpfr_mul_2si(err, err, 4 - static_cast<long>(prec), MPFR_RNDU);
      mpfr_t absacc;
      mpfr_init2(absacc, prec);
      mpfr_abs(absacc, acc, MPFR_RNDN);
      bool decided = mpfr_cmp(absacc, err) > 0;
      int s = mpfr_sgn(acc);
      mpfr_clears(acc, t, pi, ang, err, absacc, nullptr);
      if (decided) return s;
    }
    throw std::runtime_error("sign refinement failed to separate from zero");
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned k = 0; k < n_; ++k) {
      if (c_[k] == 0) continue;
      if (!first) os << " + ";
      os << to_string(c_[k]);
      if (k > 0) os << "*z" << n_ << "^" << k;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

  // Compact canonical key (used for hashing group elements).
  std::string key() const {
    std::ostringstream os;
    os << n_ << "|";
    for (unsigned k = 0; k < n_; ++k) {
      if (c_[k] != 0) os << k << ":" << to_string(c_[k]) << ";";
    }
    return os.str();
  }

 private:
  unsigned n_;
  std::vector<Rational> c_;  // length n_, canonical (degree < phi(n_))

  void reduce() {
    const auto& phi = cyclotomic_polynomial(n_);
    unsigned deg = static_cast<unsigned>(phi.size() - 1);
    for (unsigned d = n_; d-- > deg;) {
      if (c_[d] == 0) continue;
      Rational f = c_[d];
      c_[d] = 0;
      for (unsigned t = 0; t < deg; ++t)
        c_[d - deg + t] -= f * Rational(phi[t]);
    }
  }

  static std::pair<Cyclotomic, Cyclotomic> lift(const Cyclotomic& a,
                                                const Cyclotomic& b) {
    if (a.n_ == b.n_) return {a, b};
    unsigned m = static_cast<unsigned>(
        lcm_long(static_cast<long>(a.n_), static_cast<long>(b.n_)));
    return {a.promoted(m), b.promoted(m)};
  }

  using QP = std::vector<Rational>;
  static void trim(QP& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
  }
  static QP qpoly_mul(const QP& a, const QP& b) {
    QP r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
  }
  static QP qpoly_sub(const QP& a, const QP& b) {
    QP r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
  }
  static std::pair<QP, QP> qpoly_divmod(const QP& num, const QP& den) {
    QP r = num, d = den;
    trim(r);
    trim(d);
    if (d.size() == 1 && d[0] == 0) throw std::logic_error("divmod by zero");
    long dn = static_cast<long>(r.size()) - 1;
    long dd = static_cast<long>(d.size()) - 1;
    if (dn < dd) return {QP{Rational(0)}, r};
    QP q(dn - dd + 1, Rational(0));
    for (long k = dn; k >= dd; --k) {
      if (r[k] == 0) continue;
      Rational f = r[k] / d.back();
      q[k - dd] = f;
      for (long t = 0; t <= dd; ++t) r[k - dd + t] -= f * d[t];
    }
    trim(r);
    trim(q);
    return {q, r};
  }

  std::pair<double, double> eval_mpfr(unsigned prec) const {
    mpfr_t re, im, t, pi, ang, s;
    mpfr_inits2(prec, re, im, t, pi, ang, s, nullptr);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    mpfr_const_pi(pi, MPFR_RNDN);
    for (unsigned k = 0; k < n_; ++k) {
      if (c_[k] == 0) continue;
      mpfr_mul_si(ang, pi, 2 * static_cast<long>(k), MPFR_RNDN);
      mpfr_div_ui(ang, ang, n_, MPFR_RNDN);
      mpfr_cos(t, ang, MPFR_RNDN);
      mpfr_mul_q(t, t, c_[k].get_mpq_t(), MPFR_RNDN);
      mpfr_add(re, re, t, MPFR_RNDN);
      mpfr_sin(s, ang, MPFR_RNDN);
      mpfr_mul_q(s, s, c_[k].get_mpq_t(), MPFR_RNDN);
      mpfr_add(im, im, s, MPFR_RNDN);
    }
    double dr = mpfr_get_d(re, MPFR_RNDN);
    double di = mpfr_get_d(im, MPFR_RNDN);
    mpfr_clears(re, im, t, pi, ang, s, nullptr);
    return {dr, di};
  }
};

enum class ArithOp { add, sub, mul, div };

inline Cyclotomic cyclo_arith(const Cyclotomic& a, const Cyclotomic& b,
                              ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw std::logic_error("unreachable");
}

inline ComplexF cyclo_to_complex(const Cyclotomic& z, unsigned precision = 53) {
  return z.to_complex(precision);
}

}  // namespace blk
