#pragma once
// Shared randomized-input generators for the test suites.  Every generator is
// driven by an explicit std::mt19937_64 so test cases replay deterministically.

#include <random>
#include <vector>

#include "blk/eta.hpp"
#include "blk/reps.hpp"
#include "blk/scan.hpp"
#include "blk/seifert.hpp"

namespace testsup {

using namespace blk;

inline int rint(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline ZMatrix random_int_matrix(size_t r, size_t c, std::mt19937_64& g,
                                 int bound = 2) {
  ZMatrix M(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) M(i, j) = Int(rint(g, -bound, bound));
  return M;
}

// Diagonal block for eps = -1: A - A^t must be skew with determinant 1.
// Take A = Q*Jplus*Q^t + S with Jplus = [[0,I],[0,0]] and S symmetric, so
// A - A^t = Q*J*Q^t where J = [[0,I],[-I,0]]; det = det(Q)^2 * det(J) = 1.
inline ZMatrix diag_block_minus(int gi, std::mt19937_64& g) {
  size_t n = 2 * static_cast<size_t>(gi);
  ZMatrix Jp(n, n);
  for (int s = 0; s < gi; ++s) Jp(s, gi + s) = 1;
  ZMatrix Q = random_unimodular(n, g, 2);
  ZMatrix A = Q * Jp * Q.transpose();
  ZMatrix S = random_int_matrix(n, n, g);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = r; c < n; ++c) {
      A(r, c) = A(r, c) + S(r, c);
      if (c != r) A(c, r) = A(c, r) + S(r, c);
    }
  return A;
}

// Diagonal block for eps = +1: A + A^t must be symmetric, even-diagonal, with
// determinant exactly 1.  Even unimodular forms of det +1 need rank divisible
// by 4, so gi must be even; take S = Q*(H+H)*Q^t and split it as
// A = strict_upper(S) + diag(S)/2.
inline ZMatrix diag_block_plus(int gi, std::mt19937_64& g) {
  if (gi % 2 != 0)
    throw std::invalid_argument("eps=+1 diagonal blocks need even genus");
  size_t n = 2 * static_cast<size_t>(gi);
  ZMatrix H(n, n);
  for (size_t s = 0; s + 1 < n; s += 2) {
    H(s, s + 1) = 1;
    H(s + 1, s) = 1;
  }
  ZMatrix Q = random_unimodular(n, g, 2);
  ZMatrix S = Q * H * Q.transpose();
  ZMatrix A(n, n);
  for (size_t r = 0; r < n; ++r) {
    A(r, r) = S(r, r) / 2;
    for (size_t c = r + 1; c < n; ++c) A(r, c) = S(r, c);
  }
  return A;
}

// Random valid eps-boundary-link Seifert matrix with the given sizes.
// For eps = +1 every size must be even.
inline SeifertMatrix random_seifert(int eps, const std::vector<int>& sizes,
                                    std::mt19937_64& g, int off_bound = 2) {
  int m = static_cast<int>(sizes.size());
  size_t dim = 0;
  std::vector<size_t> off(m + 1, 0);
  for (int i = 0; i < m; ++i) {
    off[i + 1] = off[i] + 2 * static_cast<size_t>(sizes[i]);
    dim = off[i + 1];
  }
  ZMatrix E(dim, dim);
  for (int i = 0; i < m; ++i) {
    ZMatrix D = eps == -1 ? diag_block_minus(sizes[i], g)
                          : diag_block_plus(sizes[i], g);
    E.set_block(off[i], off[i], D);
    for (int j = i + 1; j < m; ++j) {
      ZMatrix B = random_int_matrix(2 * static_cast<size_t>(sizes[i]),
                                    2 * static_cast<size_t>(sizes[j]), g,
                                    off_bound);
      E.set_block(off[i], off[j], B);
      E.set_block(off[j], off[i], Int(-eps) * B.transpose());
    }
  }
  return SeifertMatrix(eps, sizes, E);
}

// Random k x k exact unitary: a monomial matrix whose entries are roots of
// unity of order dividing `order`.
inline CMatrix random_monomial(int k, unsigned order, std::mt19937_64& g) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  CMatrix U(k, k);
  for (int c = 0; c < k; ++c)
    U(perm[c], c) =
        Cyclotomic::root(order, rint(g, 0, static_cast<int>(order) - 1));
  return U;
}

inline UnitaryTuple random_monomial_tuple(int m, int k, unsigned order,
                                          std::mt19937_64& g) {
  std::vector<CMatrix> mats;
  for (int i = 0; i < m; ++i) mats.push_back(random_monomial(k, order, g));
  return blk::make_tuple(mats);
}

inline Cyclotomic random_root(unsigned order, std::mt19937_64& g) {
  return Cyclotomic::root(order, rint(g, 0, static_cast<int>(order) - 1));
}

inline UnitaryTuple random_haar_tuple(int m, int k, std::mt19937_64& g) {
  std::vector<FMatrix> mats;
  for (int i = 0; i < m; ++i) mats.push_back(detail::haar_unitary(k, g));
  return blk::make_tuple(mats, 1e-9);
}

// A random sizes vector: m components, genus entries within [0, 2]; for
// eps = +1 the entries are 0 or 2.
inline std::vector<int> random_sizes(int eps, int m, std::mt19937_64& g,
                                     bool allow_zero = false) {
  std::vector<int> sizes(m);
  for (int i = 0; i < m; ++i) {
    int lo = allow_zero ? 0 : 1;
    sizes[i] = eps == -1 ? rint(g, lo, 2) : 2 * rint(g, allow_zero ? 0 : 1, 1);
  }
  return sizes;
}

}  // namespace testsup
