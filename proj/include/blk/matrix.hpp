#pragma once
// Dense matrices over exchangeable scalar types (Rational, Cyclotomic,
// ComplexF, LaurentPoly).  Small scalar-trait shims keep one generic
// implementation for assembly, Kronecker products and hermitian transposes.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blk/cyclotomic.hpp"
#include "blk/rational.hpp"

namespace blk {

namespace scalar {

inline Int conj(const Int& x) { return x; }
inline Rational conj(const Rational& x) { return x; }
inline Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }
inline ComplexF conj(const ComplexF& x) { return std::conj(x); }

inline bool is_zero(const Int& x) { return x == 0; }
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline bool is_zero(const ComplexF& x) { return x == ComplexF(0, 0); }

inline Rational inv(const Rational& x) {
  if (x == 0) throw std::domain_error("division by zero");
  return Rational(1) / x;
}
inline Cyclotomic inv(const Cyclotomic& x) { return x.inverse(); }
inline ComplexF inv(const ComplexF& x) {
  if (x == ComplexF(0, 0)) throw std::domain_error("division by zero");
  return ComplexF(1, 0) / x;
}

template <class S>
S from_int(long v);
template <>
inline Int from_int<Int>(long v) { return Int(v); }
template <>
inline Rational from_int<Rational>(long v) { return Rational(v); }
template <>
inline Cyclotomic from_int<Cyclotomic>(long v) { return Cyclotomic(v); }
template <>
inline ComplexF from_int<ComplexF>(long v) {
  return ComplexF(static_cast<double>(v), 0);
}

inline double abs2(const ComplexF& x) { return std::norm(x); }

}  // namespace scalar

template <class S>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(size_t rows, size_t cols, const S& fill = S())
      : r_(rows), c_(cols), e_(rows * cols, fill) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n, scalar::from_int<S>(0));
    for (size_t i = 0; i < n; ++i) m(i, i) = scalar::from_int<S>(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(r, c);
    for (size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
      for (size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }

  S& operator()(size_t i, size_t j) { return e_[i * c_ + j]; }
  const S& operator()(size_t i, size_t j) const { return e_[i * c_ + j]; }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix r = a;
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = r.e_[k] + b.e_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix r = a;
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = r.e_[k] - b.e_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = scalar::from_int<S>(0) - x;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matmul shape mismatch");
    Matrix r(a.r_, b.c_, scalar::from_int<S>(0));
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        if (scalar::is_zero(a(i, k))) continue;
        for (size_t j = 0; j < b.c_; ++j) {
          if (scalar::is_zero(b(k, j))) continue;
          r(i, j) = r(i, j) + a(i, k) * b(k, j);
        }
      }
    return r;
  }
  friend Matrix operator*(const S& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.e_) x = s * x;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (size_t k = 0; k < a.e_.size(); ++k)
      if (!(a.e_[k] == b.e_[k])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix r(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix conj_transpose() const {
    Matrix r(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) r(j, i) = scalar::conj((*this)(i, j));
    return r;
  }

  // Kronecker product with *this as the outer factor: entry a_ij -> a_ij * B.
  Matrix kron(const Matrix& b) const {
    Matrix r(r_ * b.r_, c_ * b.c_, scalar::from_int<S>(0));
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) {
        if (scalar::is_zero((*this)(i, j))) continue;
        for (size_t p = 0; p < b.r_; ++p)
          for (size_t q = 0; q < b.c_; ++q)
            r(i * b.r_ + p, j * b.c_ + q) = (*this)(i, j) * b(p, q);
      }
    return r;
  }

  Matrix block(size_t i0, size_t j0, size_t nr, size_t nc) const {
    Matrix r(nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
    return r;
  }
  void set_block(size_t i0, size_t j0, const Matrix& b) {
    for (size_t i = 0; i < b.r_; ++i)
      for (size_t j = 0; j < b.c_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  Matrix direct_sum(const Matrix& b) const {
    Matrix r(r_ + b.r_, c_ + b.c_, scalar::from_int<S>(0));
    r.set_block(0, 0, *this);
    r.set_block(r_, c_, b);
    return r;
  }

  template <class T>
  Matrix<T> map(const std::function<T(const S&)>& f) const {
    Matrix<T> r(r_, c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  size_t r_, c_;
  std::vector<S> e_;

  void check_same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_)
      throw std::invalid_argument("matrix shape mismatch");
  }
};

using CMatrix = Matrix<Cyclotomic>;
using FMatrix = Matrix<ComplexF>;
using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Int>;

inline CMatrix to_cyclotomic(const ZMatrix& a) {
  CMatrix r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      r(i, j) = Cyclotomic(Rational(a(i, j)));
  return r;
}

inline FMatrix to_float(const CMatrix& a) {
  FMatrix r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).to_complex();
  return r;
}

inline FMatrix to_float(const ZMatrix& a) {
  FMatrix r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      r(i, j) = ComplexF(a(i, j).get_d(), 0);
  return r;
}

inline double max_abs(const FMatrix& a) {
  double s = 0;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      s = std::max(s, std::abs(a(i, j)));
  return s;
}

// Exact determinant over a field (Gaussian elimination with division).
inline Cyclotomic det_exact(CMatrix m) {
  if (!m.is_square()) throw std::invalid_argument("det of non-square");
  size_t n = m.rows();
  Cyclotomic det = Cyclotomic::one();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && m(piv, k).is_zero()) ++piv;
    if (piv == n) return Cyclotomic::zero();
    if (piv != k) {
      for (size_t j = k; j < n; ++j) std::swap(m(piv, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    Cyclotomic inv = m(k, k).inverse();
    for (size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      Cyclotomic f = m(i, k) * inv;
      for (size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

// Float determinant magnitude check via partial-pivot LU; returns the
// smallest pivot magnitude relative to the matrix scale (0 for empty).
inline double min_relative_pivot(FMatrix m) {
  size_t n = m.rows();
  if (n == 0) return 1.0;  // empty det = 1, nonsingular
  double scale = std::max(1e-300, max_abs(m));
  double worst = 1e300;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    double best = std::abs(m(k, k));
    for (size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > best) { best = std::abs(m(i, k)); piv = i; }
    if (piv != k)
      for (size_t j = k; j < n; ++j) std::swap(m(piv, j), m(k, j));
    worst = std::min(worst, best / scale);
    if (best == 0) return 0;
    for (size_t i = k + 1; i < n; ++i) {
      ComplexF f = m(i, k) / m(k, k);
      for (size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return worst;
}

// Integer determinant (Bareiss), used for unimodularity checks.
inline Int det_integer(ZMatrix m) {
  if (!m.is_square()) throw std::invalid_argument("det of non-square");
  size_t n = m.rows();
  if (n == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return Int(0);
      for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = v / prev;  // exact by Bareiss
      }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

}  // namespace blk
