#pragma once
// Multivariate Laurent polynomials over Z in t_1..t_m: exponent-vector keyed
// integer coefficients, no zero terms stored.  Enough ring structure for
// Alexander polynomials and singular-set algebra at desk scale, including an
// exact determinant (cofactor below dimension 7, fraction-free Bareiss
// elimination above).

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "blk/cyclotomic.hpp"
#include "blk/matrix.hpp"
#include "blk/rational.hpp"

namespace blk {

class LaurentPoly {
 public:
  using Exp = std::vector<int>;

  explicit LaurentPoly(int nvars = 0) : m_(nvars) {}

  static LaurentPoly constant(int nvars, const Int& c) {
    LaurentPoly p(nvars);
    if (c != 0) p.t_[Exp(nvars, 0)] = c;
    return p;
  }
  static LaurentPoly monomial(int nvars, const Exp& e, const Int& c) {
    LaurentPoly p(nvars);
    if (static_cast<int>(e.size()) != nvars)
      throw std::invalid_argument("exponent arity mismatch");
    if (c != 0) p.t_[e] = c;
    return p;
  }
  // t_i as a polynomial in m variables (i is 1-based)
  static LaurentPoly variable(int nvars, int i, int power = 1) {
    Exp e(nvars, 0);
    e.at(i - 1) = power;
    return monomial(nvars, e, Int(1));
  }

  int nvars() const { return m_; }
  const std::map<Exp, Int>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  bool operator==(const LaurentPoly& o) const {
    return m_ == o.m_ && t_ == o.t_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_arity(b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_arity(b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, -c);
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r(m_);
    for (const auto& [e, c] : t_) r.t_[e] = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_arity(b);
    LaurentPoly r(a.m_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exp e(a.m_);
        for (int k = 0; k < a.m_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  // Exact division, callers guarantee divisibility (Bareiss pivots).
  LaurentPoly divide_exact(const LaurentPoly& g) const {
    check_arity(g);
    if (g.is_zero()) throw std::domain_error("laurent division by zero");
    LaurentPoly rem = *this, q(m_);
    const auto& glead = *g.t_.rbegin();  // lex-largest term of divisor
    while (!rem.is_zero()) {
      Exp rexp = rem.t_.rbegin()->first;
      Int rc = rem.t_.rbegin()->second;
      if (!mpz_divisible_p(rc.get_mpz_t(), glead.second.get_mpz_t()))
        throw std::logic_error("non-exact laurent division (coefficient)");
      Exp e(m_);
      for (int k = 0; k < m_; ++k) e[k] = rexp[k] - glead.first[k];
      LaurentPoly term = monomial(m_, e, rc / glead.second);
      q = q + term;
      rem = rem - term * g;
      if (!rem.is_zero() && rem.t_.rbegin()->first >= rexp)
        throw std::logic_error("non-exact laurent division (no progress)");
    }
    return q;
  }

  // Substitute exact roots of unity for the variables.
  Cyclotomic eval(const std::vector<Cyclotomic>& z) const {
    if (static_cast<int>(z.size()) != m_)
      throw std::invalid_argument("eval arity mismatch");
    Cyclotomic acc = Cyclotomic::zero();
    for (const auto& [e, c] : t_) {
      Cyclotomic term{Rational(c)};
      for (int k = 0; k < m_; ++k)
        if (e[k] != 0) term *= z[k].pow(e[k]);
      acc += term;
    }
    return acc;
  }

  ComplexF eval(const std::vector<ComplexF>& z) const {
    ComplexF acc(0, 0);
    for (const auto& [e, c] : t_) {
      ComplexF term(c.get_d(), 0);
      for (int k = 0; k < m_; ++k)
        if (e[k] != 0) term *= std::pow(z[k], e[k]);
      acc += term;
    }
    return acc;
  }

  // Multiply by the unique +-monomial making the minimal exponent of every
  // variable zero and the lex-leading coefficient positive.
  LaurentPoly normalized() const {
    if (is_zero()) return *this;
    Exp shift(m_, 0);
    bool first = true;
    for (const auto& [e, c] : t_) {
      for (int k = 0; k < m_; ++k)
        shift[k] = first ? e[k] : std::min(shift[k], e[k]);
      first = false;
    }
    LaurentPoly r(m_);
    for (const auto& [e, c] : t_) {
      Exp ne(m_);
      for (int k = 0; k < m_; ++k) ne[k] = e[k] - shift[k];
      r.t_[ne] = c;
    }
    if (r.t_.rbegin()->second < 0)
      for (auto& [e, c] : r.t_) c = -c;
    return r;
  }

  // Equality up to multiplication by a unit +-t^e of the Laurent ring.
  bool equals_up_to_unit(const LaurentPoly& o) const {
    return normalized() == o.normalized();
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
      Int a = c;
      if (first) {
        if (a < 0) { os << "-"; a = -a; }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      bool unit = (a == 1);
      bool any_var = false;
      for (int k = 0; k < m_; ++k) any_var = any_var || e[k] != 0;
      if (!unit || !any_var) os << a.get_str();
      bool printed = !unit || !any_var;
      for (int k = 0; k < m_; ++k) {
        if (e[k] == 0) continue;
        if (printed) os << "*";
        if (names.empty())
          os << "t" << (k + 1);
        else
          os << names.at(k);
        if (e[k] != 1) os << "^" << e[k];
        printed = true;
      }
      first = false;
    }
    return os.str();
  }

 private:
  int m_;
  std::map<Exp, Int> t_;

  void check_arity(const LaurentPoly& o) const {
    if (m_ != o.m_) throw std::invalid_argument("variable count mismatch");
  }
  void add_term(const Exp& e, const Int& c) {
    auto it = t_.find(e);
    if (it == t_.end()) {
      if (c != 0) t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }
};

namespace detail {

inline LaurentPoly det_cofactor(const Matrix<LaurentPoly>& m,
                                std::vector<size_t> rows,
                                std::vector<size_t> cols, int nvars) {
  if (rows.empty()) return LaurentPoly::constant(nvars, Int(1));
  LaurentPoly acc(nvars);
  size_t r0 = rows[0];
  std::vector<size_t> rrest(rows.begin() + 1, rows.end());
  for (size_t t = 0; t < cols.size(); ++t) {
    const LaurentPoly& piv = m(r0, cols[t]);
    if (piv.is_zero()) continue;
    std::vector<size_t> crest;
    crest.reserve(cols.size() - 1);
    for (size_t u = 0; u < cols.size(); ++u)
      if (u != t) crest.push_back(cols[u]);
    LaurentPoly sub = det_cofactor(m, rrest, crest, nvars);
    LaurentPoly term = piv * sub;
    acc = (t % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace detail

inline LaurentPoly laurent_det(const Matrix<LaurentPoly>& m) {
  if (!m.is_square()) throw std::invalid_argument("det of non-square");
  size_t n = m.rows();
  int nvars = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) nvars = std::max(nvars, m(i, j).nvars());
  if (n == 0) return LaurentPoly::constant(nvars, Int(1));
  if (n < 7) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    return detail::det_cofactor(m, idx, idx, nvars);
  }
  // Fraction-free Bareiss over the Laurent ring.
  Matrix<LaurentPoly> w = m;
  LaurentPoly prev = LaurentPoly::constant(nvars, Int(1));
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k).is_zero()) {
      size_t piv = k + 1;
      while (piv < n && w(piv, k).is_zero()) ++piv;
      if (piv == n) return LaurentPoly(nvars);  // singular
      for (size_t j = 0; j < n; ++j) std::swap(w(piv, j), w(k, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        LaurentPoly v = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        w(i, j) = v.divide_exact(prev);
      }
    prev = w(k, k);
  }
  LaurentPoly d = w(n - 1, n - 1);
  return sign > 0 ? d : -d;
}

}  // namespace blk
