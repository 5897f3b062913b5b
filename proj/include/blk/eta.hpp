#pragma once
// The invariant formulas: the circle eta function, assembly of the twisted
// matrix M(A, alpha) with the A-outer tensor convention, the signature
// obstruction sigma(A, U), singular-set membership, the full rho invariant,
// the k=1 abelian specialization, and the hermitian-form variant sigma(A, F).

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blk/cyclotomic.hpp"
#include "blk/matrix.hpp"
#include "blk/reps.hpp"
#include "blk/seifert.hpp"
#include "blk/signature.hpp"

namespace blk {

// eta of the circle with holonomy z = e^{2 pi i a}, a in [0,1):
// 0 at a = 0, else 1 - 2a.  Exact for exact roots of unity.
inline Rational eta_circle(const Cyclotomic& z) {
  auto r = z.as_root_of_unity();
  if (!r) {
    if (!(z * z.conj() - Cyclotomic::one()).is_zero())
      throw std::invalid_argument("eta_circle: |z| != 1");
    throw std::invalid_argument(
        "eta_circle: exact unit not a root of unity; use the float overload");
  }
  long j = r->first, n = r->second;
  if (j == 0) return Rational(0);
  return Rational(1) - make_rational(Int(2 * j), Int(n));
}

inline double eta_circle(const ComplexF& z, double circle_tol = 1e-6,
                         double snap_tol = 1e-9) {
  double mod = std::abs(z);
  if (std::abs(mod - 1.0) > circle_tol)
    throw std::invalid_argument("eta_circle: |z| != 1 beyond tolerance");
  const double pi = std::acos(-1.0);
  double a = std::arg(z) / (2 * pi);
  if (a < 0) a += 1.0;
  if (a < snap_tol || a > 1.0 - snap_tol) return 0.0;
  return 1.0 - 2.0 * a;
}

namespace detail {

template <typename S>
struct eta_scalar {};

template <>
struct eta_scalar<Cyclotomic> {
  static Cyclotomic from_int(const Int& v) { return Cyclotomic(Rational(v)); }
  static Cyclotomic sqrt_minus_one() { return Cyclotomic::root(4, 1); }
  static Cyclotomic half() { return Cyclotomic(Rational(1, 2)); }
};

template <>
struct eta_scalar<ComplexF> {
  static ComplexF from_int(const Int& v) { return ComplexF(v.get_d(), 0); }
  static ComplexF sqrt_minus_one() { return ComplexF(0, 1); }
  static ComplexF half() { return ComplexF(0.5, 0); }
};

// B := A - eps*T*A^t*T^{-1} - A*T^{-1} + eps*T*A^t, with every integer entry
// a_ij replaced by a_ij*id_k (A the outer Kronecker factor) and
// T = blockdiag(U_i repeated 2g_i times).  T^{-1} = T^dagger (unitary).
template <typename S>
Matrix<S> assemble_M_impl(const SeifertMatrix& A,
                          const std::vector<Matrix<S>>& U) {
  if (static_cast<int>(U.size()) != A.m())
    throw std::invalid_argument("component count mismatch");
  size_t k = U.empty() ? 0 : U[0].rows();
  size_t n = A.dim();
  Matrix<S> T(n * k, n * k);
  for (size_t r = 0; r < n; ++r)
    T.set_block(r * k, r * k, U[A.component_of(r) - 1]);
  Matrix<S> Tinv = T.conj_transpose();
  Matrix<S> AL(n * k, n * k);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      const Int& a = A.entries()(r, c);
      if (a == 0) continue;
      S v = eta_scalar<S>::from_int(a);
      for (size_t t = 0; t < k; ++t) AL(r * k + t, c * k + t) = v;
    }
  Matrix<S> ALt = AL.transpose();
  S eps = eta_scalar<S>::from_int(Int(A.epsilon()));
  return AL - eps * (T * ALt * Tinv) - AL * Tinv + eps * (T * ALt);
}

}  // namespace detail

inline CMatrix assemble_M(const SeifertMatrix& A,
                          const std::vector<CMatrix>& U) {
  return detail::assemble_M_impl<Cyclotomic>(A, U);
}

inline FMatrix assemble_M(const SeifertMatrix& A,
                          const std::vector<FMatrix>& U) {
  return detail::assemble_M_impl<ComplexF>(A, U);
}

inline CMatrix assemble_M(const SeifertMatrix& A, const UnitaryTuple& alpha) {
  if (alpha.mode != RepMode::exact)
    throw std::invalid_argument("exact assemble_M needs an exact tuple");
  return assemble_M(A, alpha.exact);
}

struct SigmaResult {
  int sign = 0;
  bool singular = false;
  bool hermitized = false;
  bool indeterminate = false;  // float mode: eigenvalues inside the tol band
  RepMode mode = RepMode::exact;
  Inertia inertia;
};

// sigma(A, U) := sign(sqrt(-eps) * B) with B = assemble_M(A, alpha):
// for eps = -1 the sign of the hermitian B, for eps = +1 the sign of i*B.
// Relaxed inputs can break hermiticity; then hermitize averages (M+M^d)/2
// and stamps the result, otherwise a hard error is raised.
inline SigmaResult sigma(const SeifertMatrix& A, const UnitaryTuple& alpha,
                         bool hermitize = false, double tol = 1e-9) {
  SigmaResult res;
  res.mode = alpha.mode;
  if (alpha.mode == RepMode::exact) {
    CMatrix B = assemble_M(A, alpha.exact);
    CMatrix M = A.epsilon() == -1
                    ? B
                    : detail::eta_scalar<Cyclotomic>::sqrt_minus_one() * B;
    Hermiticity h = classify_hermitian(M);
    if (h == Hermiticity::skew_hermitian)
      M = detail::eta_scalar<Cyclotomic>::sqrt_minus_one() * M;
    else if (h == Hermiticity::neither) {
      if (!hermitize)
        throw std::domain_error(
            "sigma: assembled matrix is neither hermitian nor skew-hermitian "
            "(relaxed/invalid input); pass hermitize to average");
      M = detail::eta_scalar<Cyclotomic>::half() * (M + M.conj_transpose());
      res.hermitized = true;
    }
    res.inertia = inertia_exact_hermitian(M);
  } else {
    FMatrix B = assemble_M(A, alpha.floats);
    FMatrix M = A.epsilon() == -1 ? B : ComplexF(0, 1) * B;
    Hermiticity h = classify_hermitian(M, tol);
    if (h == Hermiticity::skew_hermitian)
      M = ComplexF(0, 1) * M;
    else if (h == Hermiticity::neither) {
      if (!hermitize)
        throw std::domain_error(
            "sigma: assembled matrix is neither hermitian nor skew-hermitian "
            "(relaxed/invalid input); pass hermitize to average");
      M = ComplexF(0.5, 0) * (M + M.conj_transpose());
      res.hermitized = true;
    }
    res.inertia = inertia_float_hermitian(M, tol);
    res.indeterminate = res.inertia.indeterminate;
  }
  res.sign = res.inertia.sign();
  res.singular = res.inertia.zero > 0;
  return res;
}

// Membership in the singular set: det(M(A, alpha)) = 0.
inline bool singular_set_test(const SeifertMatrix& A,
                              const UnitaryTuple& alpha, double tol = 1e-9) {
  if (alpha.mode == RepMode::exact) {
    CMatrix B = assemble_M(A, alpha.exact);
    return det_exact(B).is_zero();
  }
  FMatrix B = assemble_M(A, alpha.floats);
  return min_relative_pivot(B) <= tol;
}

struct RhoResult {
  Rational first_term{0};  // exact-mode eta contribution
  int signature_term = 0;
  Rational total{0};           // exact mode
  double first_term_float = 0;  // float mode
  double total_float = 0;       // float mode
  RepMode mode = RepMode::exact;
  bool relaxed = false;
  bool singular = false;
  bool hermitized = false;
  bool indeterminate = false;

  std::string total_str() const {
    if (mode == RepMode::exact) return blk::to_string(total);
    std::ostringstream os;
    os << total_float;
    return os.str();
  }
  double total_as_double() const {
    return mode == RepMode::exact ? total.get_d() : total_float;
  }
};

// rho(M_L, phi)(alpha) = eps * sum_i [ pairing_signature(A, i) *
// sum_j eta(z_ij) ] + sign(sqrt(-eps) * M(A, alpha)), with z_ij the
// eigenvalues of U_i.  Per-component pairing; for eps = -1 the first term
// vanishes identically on valid matrices.
inline RhoResult rho(const SeifertMatrix& A, const UnitaryTuple& alpha,
                     std::optional<int> epsilon_override = std::nullopt,
                     bool hermitize = false, double tol = 1e-9) {
  SeifertMatrix Aeff = A;
  RhoResult res;
  res.relaxed = A.relaxed();
  if (epsilon_override && *epsilon_override != A.epsilon()) {
    Aeff = SeifertMatrix(*epsilon_override, A.sizes(), A.entries(), true);
    if (!validate(Aeff).empty()) res.relaxed = true;
  }
  if (alpha.m != Aeff.m())
    throw std::invalid_argument("component count mismatch");

  res.mode = alpha.mode;
  Rational first_exact(0);
  double first_float = 0;
  for (int i = 1; i <= Aeff.m(); ++i) {
    int si = pairing_signature(Aeff, i);
    if (si == 0) continue;  // no eta sum needed; keeps eps=-1 exact
    if (alpha.mode == RepMode::exact) {
      EigenAngles ea = eigen_angles(alpha.U(i));
      if (ea.mode == RepMode::exact && res.mode == RepMode::exact) {
        Rational s(0);
        for (const auto& z : ea.exact) s += eta_circle(z);
        first_exact += Rational(si) * s;
      } else {
        res.mode = RepMode::floating;
        double s = 0;
        for (const auto& z : ea.values) s += eta_circle(z);
        first_float += si * s;
      }
    } else {
      EigenAngles ea = eigen_angles(alpha.Uf(i), 1e-6);
      double s = 0;
      for (const auto& z : ea.values) s += eta_circle(z);
      first_float += si * s;
    }
  }
  // A float eta sum after an exact one: fold the exact part in.
  if (res.mode == RepMode::floating) first_float += first_exact.get_d();

  SigmaResult sg = sigma(Aeff, alpha, hermitize, tol);
  res.signature_term = sg.sign;
  res.singular = sg.singular;
  res.hermitized = sg.hermitized;
  res.indeterminate = sg.indeterminate;

  int eps = Aeff.epsilon();
  if (res.mode == RepMode::exact) {
    res.first_term = Rational(eps) * first_exact;
    res.total = res.first_term + Rational(res.signature_term);
    res.first_term_float = res.first_term.get_d();
    res.total_float = res.total.get_d();
  } else {
    res.first_term_float = eps * first_float;
    res.total_float = res.first_term_float + res.signature_term;
  }
  return res;
}

// k = 1 specialization: the tuple is the m unit scalars z_i.  Returns the
// integer rho value; non-integral totals (possible only for eps=+1 data with
// nonzero pairing signatures) are a domain error.
inline int abelian_rho(const SeifertMatrix& A,
                       const std::vector<Cyclotomic>& z,
                       std::optional<int> epsilon_override = std::nullopt,
                       bool hermitize = false) {
  std::vector<CMatrix> mats;
  for (const auto& s : z) {
    CMatrix u(1, 1);
    u(0, 0) = s;
    mats.push_back(u);
  }
  RhoResult r = rho(A, blk::make_tuple(mats), epsilon_override, hermitize);
  if (!is_integer(r.total))
    throw std::domain_error("abelian_rho: non-integral total " +
                            blk::to_string(r.total));
  return static_cast<int>(r.total.get_num().get_si());
}

inline double abelian_rho(const SeifertMatrix& A,
                          const std::vector<ComplexF>& z,
                          std::optional<int> epsilon_override = std::nullopt,
                          bool hermitize = false, double tol = 1e-9) {
  std::vector<FMatrix> mats;
  for (const auto& s : z) {
    FMatrix u(1, 1);
    u(0, 0) = s;
    mats.push_back(u);
  }
  RhoResult r =
      rho(A, blk::make_tuple(mats, 1e-9), epsilon_override, hermitize, tol);
  return r.total_float;
}

// ---------------------------------------------------------------------------
// Hermitian-form variant sigma(A, F).

struct FormTuple {
  int m = 0;
  std::vector<int> dims;                          // k_1..k_m
  std::map<std::pair<int, int>, CMatrix> blocks;  // i <= j, 1-based
  RepMode mode = RepMode::exact;
  std::map<std::pair<int, int>, FMatrix> blocks_float;  // float mode

  int dim(int i) const { return dims.at(i - 1); }
};

struct SigmaFResult {
  int sign = 0;
  bool singular = false;
  Inertia inertia;
  RepMode mode = RepMode::exact;
};

namespace detail {

template <typename S>
Matrix<S> to_scalar(const ZMatrix& z);
template <>
inline Matrix<Cyclotomic> to_scalar<Cyclotomic>(const ZMatrix& z) {
  return to_cyclotomic(z);
}
template <>
inline Matrix<ComplexF> to_scalar<ComplexF>(const ZMatrix& z) {
  return to_float(z);
}

template <typename S>
Matrix<S> assemble_F_impl(const SeifertMatrix& A, const FormTuple& F,
                          const std::map<std::pair<int, int>, Matrix<S>>& bl) {
  if (F.m != A.m()) throw std::invalid_argument("component count mismatch");
  int m = A.m();
  std::vector<size_t> off(m + 1, 0);
  for (int i = 1; i <= m; ++i)
    off[i] = off[i - 1] +
             2 * static_cast<size_t>(A.g(i)) * static_cast<size_t>(F.dim(i));
  auto get_block = [&](int i, int j) -> Matrix<S> {
    auto it = bl.find({i, j});
    if (it != bl.end()) {
      if (it->second.rows() != static_cast<size_t>(F.dim(i)) ||
          it->second.cols() != static_cast<size_t>(F.dim(j)))
        throw std::invalid_argument("form block (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") has wrong shape");
      return it->second;
    }
    return Matrix<S>(F.dim(i), F.dim(j));
  };
  Matrix<S> G(off[m], off[m]);
  for (int i = 1; i <= m; ++i) {
    ZMatrix Aii = A.block(i, i);
    Matrix<S> Fii = get_block(i, i);
    Matrix<S> Ai = detail::to_scalar<S>(Aii);
    Matrix<S> d = Ai.kron(Fii) +
                  Ai.transpose().kron(Fii.conj_transpose());
    G.set_block(off[i - 1], off[i - 1], d);
    for (int j = i + 1; j <= m; ++j) {
      Matrix<S> Fij = get_block(i, j);
      Matrix<S> bij = detail::to_scalar<S>(A.block(i, j)).kron(Fij);
      G.set_block(off[i - 1], off[j - 1], bij);
      // F_ji = sqrt(-eps) * conj(F_ij)^t
      Matrix<S> Fji = Fij.conj_transpose();
      if (A.epsilon() == 1) Fji = eta_scalar<S>::sqrt_minus_one() * Fji;
      Matrix<S> bji = detail::to_scalar<S>(A.block(j, i)).kron(Fji);
      G.set_block(off[j - 1], off[i - 1], bji);
    }
  }
  return G;
}

// Report the first block pair whose hermitian-conjugate relation fails.
template <typename S, typename EqFn>
std::string first_offending_pair(const SeifertMatrix& A, const FormTuple& F,
                                 const Matrix<S>& G, EqFn close) {
  int m = A.m();
  std::vector<size_t> off(m + 1, 0);
  for (int i = 1; i <= m; ++i)
    off[i] = off[i - 1] +
             2 * static_cast<size_t>(A.g(i)) * static_cast<size_t>(F.dim(i));
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j) {
      size_t ri = off[i - 1], rj = off[j - 1];
      size_t hi = off[i] - off[i - 1], hj = off[j] - off[j - 1];
      for (size_t r = 0; r < hi; ++r)
        for (size_t c = 0; c < hj; ++c)
          if (!close(G(ri + r, rj + c), G(rj + c, ri + r)))
            return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  return "(?)";
}

}  // namespace detail

inline SigmaFResult sigma_f_full(const SeifertMatrix& A, const FormTuple& F,
                                 double tol = 1e-9) {
  SigmaFResult res;
  res.mode = F.mode;
  if (F.mode == RepMode::exact) {
    CMatrix G = detail::assemble_F_impl<Cyclotomic>(A, F, F.blocks);
    if (classify_hermitian(G) != Hermiticity::hermitian) {
      std::string pair = detail::first_offending_pair(
          A, F, G, [](const Cyclotomic& a, const Cyclotomic& b) {
            return (a - b.conj()).is_zero();
          });
      throw std::domain_error("sigma_f: assembled form is not hermitian at "
                              "block pair " + pair);
    }
    res.inertia = inertia_exact_hermitian(G);
  } else {
    FMatrix G = detail::assemble_F_impl<ComplexF>(A, F, F.blocks_float);
    double scale = std::max(1.0, max_abs(G));
    if (classify_hermitian(G, tol) != Hermiticity::hermitian) {
      std::string pair = detail::first_offending_pair(
          A, F, G, [&](const ComplexF& a, const ComplexF& b) {
            return std::abs(a - std::conj(b)) <= tol * scale;
          });
      throw std::domain_error("sigma_f: assembled form is not hermitian at "
                              "block pair " + pair);
    }
    res.inertia = inertia_float_hermitian(G, tol);
  }
  res.sign = res.inertia.sign();
  res.singular = res.inertia.zero > 0;
  return res;
}

inline int sigma_f(const SeifertMatrix& A, const FormTuple& F,
                   double tol = 1e-9) {
  return sigma_f_full(A, F, tol).sign;
}

}  // namespace blk
