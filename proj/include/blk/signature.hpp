#pragma once
// Inertia of hermitian matrices.
//
// Exact backend: pivoted congruence (Lagrange/LDL-style) reduction over
// cyclotomic scalars.  Diagonal pivots contribute their certified sign; if
// the whole diagonal vanishes, a nonzero off-diagonal entry yields a 2x2
// hyperbolic pivot contributing (1,1); an all-zero remainder contributes
// zeros.  Schur complements keep hermiticity exactly, so diagonal entries
// stay real and their signs are decidable.
//
// Float backend: cyclic complex Jacobi eigenvalues with a tolerance band;
// eigenvalues falling inside [tol/100, tol*100] (relative to the matrix
// scale) raise an "indeterminate" flag instead of silently classifying.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "blk/matrix.hpp"

namespace blk {

struct Inertia {
  long pos = 0, neg = 0, zero = 0;
  bool indeterminate = false;
  long sign() const { return pos - neg; }
  long dim() const { return pos + neg + zero; }
  bool operator==(const Inertia& o) const {
    return pos == o.pos && neg == o.neg && zero == o.zero;
  }
};

enum class Hermiticity { hermitian, skew_hermitian, neither };

inline const char* to_string(Hermiticity h) {
  switch (h) {
    case Hermiticity::hermitian: return "hermitian";
    case Hermiticity::skew_hermitian: return "skew_hermitian";
    case Hermiticity::neither: return "neither";
  }
  return "?";
}

inline Hermiticity classify_hermitian(const CMatrix& m) {
  bool herm = true, skew = true;
  for (size_t i = 0; i < m.rows() && (herm || skew); ++i)
    for (size_t j = i; j < m.cols() && (herm || skew); ++j) {
      Cyclotomic c = m(j, i).conj();
      if (!(m(i, j) == c)) herm = false;
      if (!(m(i, j) == -c)) skew = false;
    }
  if (herm) return Hermiticity::hermitian;  // zero matrix lands here
  if (skew) return Hermiticity::skew_hermitian;
  return Hermiticity::neither;
}

inline Hermiticity classify_hermitian(const FMatrix& m, double tol) {
  double s = std::max(1.0, max_abs(m));
  double dh = 0, ds = 0;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      ComplexF c = std::conj(m(j, i));
      dh = std::max(dh, std::abs(m(i, j) - c));
      ds = std::max(ds, std::abs(m(i, j) + c));
    }
  if (dh <= tol * s) return Hermiticity::hermitian;
  if (ds <= tol * s) return Hermiticity::skew_hermitian;
  return Hermiticity::neither;
}

// ---- exact backend ----

inline Inertia inertia_exact_hermitian(CMatrix h) {
  if (!h.is_square()) throw std::invalid_argument("inertia of non-square");
  Inertia in;
  size_t n = h.rows();
  std::vector<size_t> act(n);
  for (size_t i = 0; i < n; ++i) act[i] = i;

  while (!act.empty()) {
    size_t a = act.size();
    // pick a diagonal pivot, preferring cheap rational signs
    size_t piv = a;
    for (size_t t = 0; t < a; ++t) {
      const Cyclotomic& d = h(act[t], act[t]);
      if (d.is_zero()) continue;
      if (d.is_rational()) { piv = t; break; }
      if (piv == a) piv = t;
    }
    if (piv < a) {
      size_t p = act[piv];
      const Cyclotomic d = h(p, p);
      int s = d.sign_certified();
      if (s > 0) ++in.pos; else ++in.neg;
      Cyclotomic dinv = d.inverse();
      std::vector<size_t> rest;
      rest.reserve(a - 1);
      for (size_t t = 0; t < a; ++t)
        if (t != piv) rest.push_back(act[t]);
      for (size_t ii = 0; ii < rest.size(); ++ii) {
        size_t i = rest[ii];
        if (h(i, p).is_zero()) continue;
        Cyclotomic f = h(i, p) * dinv;
        for (size_t jj = 0; jj < rest.size(); ++jj) {
          size_t j = rest[jj];
          if (h(p, j).is_zero()) continue;
          h(i, j) -= f * h(p, j);
        }
      }
      act = std::move(rest);
      continue;
    }
    // all active diagonal entries are zero: hunt an off-diagonal pivot
    size_t r = a, c = a;
    for (size_t t = 0; t < a && r == a; ++t)
      for (size_t u = t + 1; u < a; ++u)
        if (!h(act[t], act[u]).is_zero()) { r = t; c = u; break; }
    if (r == a) {  // zero form on the remainder
      in.zero += static_cast<long>(a);
      break;
    }
    // hyperbolic pivot on (p,q): [[0,b],[conj b,0]] has inertia (1,1)
    size_t p = act[r], q = act[c];
    ++in.pos;
    ++in.neg;
    const Cyclotomic b = h(p, q);
    Cyclotomic binv = b.inverse();
    Cyclotomic bcinv = b.conj().inverse();
    std::vector<size_t> rest;
    rest.reserve(a - 2);
    for (size_t t = 0; t < a; ++t)
      if (t != r && t != c) rest.push_back(act[t]);
    for (size_t ii = 0; ii < rest.size(); ++ii) {
      size_t i = rest[ii];
      const Cyclotomic hip = h(i, p), hiq = h(i, q);
      if (hip.is_zero() && hiq.is_zero()) continue;
      for (size_t jj = 0; jj < rest.size(); ++jj) {
        size_t j = rest[jj];
        // Schur vs the 2x2 block: H - C B^{-1} C^dagger
        h(i, j) -= hiq * binv * h(p, j) + hip * bcinv * h(q, j);
      }
    }
    act = std::move(rest);
  }
  return in;
}

// ---- float backend ----

// Cyclic complex Jacobi; returns eigenvalues (unsorted); optionally
// accumulates eigenvectors so that V^dagger H V = diag.
inline std::vector<double> jacobi_hermitian(FMatrix h, FMatrix* vecs = nullptr) {
  size_t n = h.rows();
  if (!h.is_square()) throw std::invalid_argument("jacobi of non-square");
  FMatrix v = FMatrix::identity(n);
  double scale = std::max(1.0, max_abs(h));
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
    if (off <= 1e-14 * scale) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        ComplexF f = h(p, q);
        double af = std::abs(f);
        if (af <= 1e-16 * scale) continue;
        double a = h(p, p).real(), b = h(q, q).real();
        double tau = (b - a) / (2 * af);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1 / std::sqrt(1 + t * t), s = t * c;
        ComplexF u = f / af;
        ComplexF gpp(c, 0), gpq = s * u, gqp = -s * std::conj(u), gqq(c, 0);
        for (size_t k = 0; k < n; ++k) {  // columns: H <- H G
          ComplexF xp = h(k, p), xq = h(k, q);
          h(k, p) = xp * gpp + xq * gqp;
          h(k, q) = xp * gpq + xq * gqq;
        }
        for (size_t k = 0; k < n; ++k) {  // rows: H <- G^dagger H
          ComplexF xp = h(p, k), xq = h(q, k);
          h(p, k) = std::conj(gpp) * xp + std::conj(gqp) * xq;
          h(q, k) = std::conj(gpq) * xp + std::conj(gqq) * xq;
        }
        h(p, q) = ComplexF(0, 0);
        h(q, p) = ComplexF(0, 0);
        h(p, p) = ComplexF(h(p, p).real(), 0);
        h(q, q) = ComplexF(h(q, q).real(), 0);
        if (vecs)
          for (size_t k = 0; k < n; ++k) {
            ComplexF xp = v(k, p), xq = v(k, q);
            v(k, p) = xp * gpp + xq * gqp;
            v(k, q) = xp * gpq + xq * gqq;
          }
      }
  }
  std::vector<double> ev(n);
  for (size_t i = 0; i < n; ++i) ev[i] = h(i, i).real();
  if (vecs) *vecs = v;
  return ev;
}

inline Inertia inertia_float_hermitian(const FMatrix& h, double tol = 1e-9) {
  Inertia in;
  double s = std::max(1.0, max_abs(h));
  std::vector<double> ev = jacobi_hermitian(h);
  for (double l : ev) {
    double m = std::abs(l);
    if (m >= tol * s / 100 && m <= tol * s * 100) in.indeterminate = true;
    if (m <= tol * s) ++in.zero;
    else if (l > 0) ++in.pos;
    else ++in.neg;
  }
  return in;
}

// ---- public signature op: hermitian or skew-hermitian input ----

inline Inertia signature(const CMatrix& m) {
  Hermiticity h = classify_hermitian(m);
  if (h == Hermiticity::hermitian) return inertia_exact_hermitian(m);
  if (h == Hermiticity::skew_hermitian) {
    // sign(A) := sign(iA)
    Cyclotomic i4 = Cyclotomic::root(4, 1);
    CMatrix im(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c) im(r, c) = i4 * m(r, c);
    return inertia_exact_hermitian(im);
  }
  throw std::invalid_argument("signature: matrix is neither hermitian nor skew-hermitian");
}

inline Inertia signature(const FMatrix& m, double tol = 1e-9) {
  Hermiticity h = classify_hermitian(m, tol);
  if (h == Hermiticity::hermitian) return inertia_float_hermitian(m, tol);
  if (h == Hermiticity::skew_hermitian) {
    FMatrix im(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c) im(r, c) = ComplexF(0, 1) * m(r, c);
    return inertia_float_hermitian(im, tol);
  }
  throw std::invalid_argument("signature: matrix is neither hermitian nor skew-hermitian");
}

}  // namespace blk
