#pragma once
// epsilon-boundary-link Seifert matrices: block-partitioned integer matrices
// with the off-diagonal pairing axiom A_ij = -eps*A_ji^t and unimodular
// (anti)symmetrized diagonal blocks, plus Alexander polynomials, pairing
// signatures, block sums and metabolic-certificate verification.

#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blk/laurent.hpp"
#include "blk/matrix.hpp"
#include "blk/signature.hpp"

namespace blk {

struct Violation {
  enum class Kind { off_diagonal, diagonal_determinant };
  Kind kind;
  int block_i = 0, block_j = 0;  // 1-based component indices
  int row = 0, col = 0;          // 1-based global coordinates (off-diagonal)
  std::string detail;

  std::string str() const {
    std::ostringstream os;
    if (kind == Kind::off_diagonal) {
      os << "block pair (" << block_i << "," << block_j << "): entry pair ("
         << row << "," << col << ")/(" << col << "," << row << ") " << detail;
    } else {
      os << "block (" << block_i << "," << block_i << "): " << detail;
    }
    return os.str();
  }
};

class SeifertMatrix {
 public:
  SeifertMatrix(int epsilon, std::vector<int> sizes, ZMatrix entries,
                bool relaxed = false)
      : epsilon_(epsilon),
        sizes_(std::move(sizes)),
        entries_(std::move(entries)),
        relaxed_(relaxed) {
    if (epsilon_ != 1 && epsilon_ != -1)
      throw std::invalid_argument("epsilon must be +1 or -1");
    size_t dim = 0;
    for (int g : sizes_) {
      if (g < 0) throw std::invalid_argument("negative genus entry");
      dim += 2 * static_cast<size_t>(g);
    }
    if (entries_.rows() != dim || entries_.cols() != dim)
      throw std::invalid_argument(
          "dimension mismatch between sizes and entries: expected " +
          std::to_string(dim) + ", got " + std::to_string(entries_.rows()) +
          "x" + std::to_string(entries_.cols()));
  }

  int epsilon() const { return epsilon_; }
  int m() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  int g(int i) const { return sizes_.at(i - 1); }  // 1-based
  size_t dim() const { return entries_.rows(); }
  const ZMatrix& entries() const { return entries_; }
  bool relaxed() const { return relaxed_; }
  void set_relaxed(bool r) { relaxed_ = r; }

  // Row/col offset of component i (1-based).
  size_t offset(int i) const {
    size_t o = 0;
    for (int t = 1; t < i; ++t) o += 2 * static_cast<size_t>(g(t));
    return o;
  }

  ZMatrix block(int i, int j) const {  // 1-based
    return entries_.block(offset(i), offset(j), 2 * g(i), 2 * g(j));
  }

  // Component index (1-based) owning global 0-based row r.
  int component_of(size_t r) const {
    size_t o = 0;
    for (int i = 1; i <= m(); ++i) {
      o += 2 * static_cast<size_t>(g(i));
      if (r < o) return i;
    }
    throw std::out_of_range("row outside matrix");
  }

 private:
  int epsilon_;
  std::vector<int> sizes_;
  ZMatrix entries_;
  bool relaxed_;
};

// Both axioms; empty list iff the matrix is a genuine epsilon-boundary-link
// Seifert matrix.  Off-diagonal mismatches are reported once per entry pair.
inline std::vector<Violation> validate(const SeifertMatrix& A) {
  std::vector<Violation> out;
  const ZMatrix& E = A.entries();
  Int eps(A.epsilon());
  for (int i = 1; i <= A.m(); ++i)
    for (int j = i + 1; j <= A.m(); ++j) {
      size_t oi = A.offset(i), oj = A.offset(j);
      for (size_t r = 0; r < 2 * static_cast<size_t>(A.g(i)); ++r)
        for (size_t c = 0; c < 2 * static_cast<size_t>(A.g(j)); ++c) {
          Int lhs = E(oi + r, oj + c);
          Int rhs = -eps * E(oj + c, oi + r);
          if (lhs != rhs) {
            Violation v;
            v.kind = Violation::Kind::off_diagonal;
            v.block_i = i;
            v.block_j = j;
            v.row = static_cast<int>(oi + r) + 1;
            v.col = static_cast<int>(oj + c) + 1;
            std::ostringstream os;
            os << "A[" << v.row << "," << v.col << "]=" << lhs.get_str()
               << " but -eps*A[" << v.col << "," << v.row
               << "]=" << rhs.get_str();
            v.detail = os.str();
            out.push_back(v);
          }
        }
    }
  for (int i = 1; i <= A.m(); ++i) {
    ZMatrix Aii = A.block(i, i);
    ZMatrix S = Aii + Int(A.epsilon()) * Aii.transpose();
    Int d = det_integer(S);
    if (d != 1) {
      Violation v;
      v.kind = Violation::Kind::diagonal_determinant;
      v.block_i = v.block_j = i;
      v.detail = "det(A_ii + eps*A_ii^t) = " + d.get_str() + ", expected 1";
      out.push_back(v);
    }
  }
  return out;
}

inline bool is_valid(const SeifertMatrix& A) { return validate(A).empty(); }

// Raw det(A*T - A^t) over Z[t_1^(+-1),...,t_m^(+-1)], with
// T = diag(t_i * id_{2g_i}).
inline LaurentPoly alexander(const SeifertMatrix& A) {
  int m = A.m();
  size_t n = A.dim();
  if (n == 0) return LaurentPoly::constant(m, Int(1));
  Matrix<LaurentPoly> W(n, n, LaurentPoly(m));
  for (size_t r = 0; r < n; ++r) {
    int comp_c;
    for (size_t c = 0; c < n; ++c) {
      comp_c = A.component_of(c);
      LaurentPoly cell(m);
      if (A.entries()(r, c) != 0)
        cell = cell + LaurentPoly::variable(m, comp_c) *
                          LaurentPoly::constant(m, A.entries()(r, c));
      if (A.entries()(c, r) != 0)
        cell = cell - LaurentPoly::constant(m, A.entries()(c, r));
      W(r, c) = cell;
    }
  }
  return laurent_det(W);
}

// sign of sqrt(eps)*(A_ii + eps*A_ii^t): the symmetrized (eps=+1) or
// i*(skew) (eps=-1) pairing block.  i is 1-based.
inline int pairing_signature(const SeifertMatrix& A, int i) {
  if (i < 1 || i > A.m()) throw std::out_of_range("component index");
  if (A.g(i) == 0) return 0;
  ZMatrix Aii = A.block(i, i);
  ZMatrix S = Aii + Int(A.epsilon()) * Aii.transpose();
  CMatrix H = to_cyclotomic(S);
  // eps=-1 gives a skew-symmetric S; signature() handles it as i*S.
  return signature(H).sign();
}

// Componentwise direct sum (boundary connected sum on matrices).
inline SeifertMatrix block_sum(const SeifertMatrix& A, const SeifertMatrix& B) {
  if (A.m() != B.m()) throw std::invalid_argument("component count mismatch");
  if (A.epsilon() != B.epsilon()) throw std::invalid_argument("epsilon mismatch");
  int m = A.m();
  std::vector<int> sizes(m);
  size_t dim = 0;
  for (int i = 1; i <= m; ++i) {
    sizes[i - 1] = A.g(i) + B.g(i);
    dim += 2 * static_cast<size_t>(sizes[i - 1]);
  }
  ZMatrix E(dim, dim);
  auto offset = [&](int i) {
    size_t o = 0;
    for (int t = 1; t < i; ++t) o += 2 * static_cast<size_t>(sizes[t - 1]);
    return o;
  };
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      E.set_block(offset(i), offset(j), A.block(i, j));
      E.set_block(offset(i) + 2 * A.g(i), offset(j) + 2 * A.g(j),
                  B.block(i, j));
    }
  return SeifertMatrix(A.epsilon(), sizes, E, A.relaxed() || B.relaxed());
}

// Reverse the component order, permuting sizes and blocks consistently.
inline SeifertMatrix reverse(const SeifertMatrix& A) {
  int m = A.m();
  std::vector<int> sizes(m);
  for (int i = 1; i <= m; ++i) sizes[i - 1] = A.g(m + 1 - i);
  size_t dim = A.dim();
  ZMatrix E(dim, dim);
  auto offset = [&](int i) {
    size_t o = 0;
    for (int t = 1; t < i; ++t) o += 2 * static_cast<size_t>(sizes[t - 1]);
    return o;
  };
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      E.set_block(offset(i), offset(j), A.block(m + 1 - i, m + 1 - j));
  return SeifertMatrix(A.epsilon(), sizes, E, A.relaxed());
}

inline SeifertMatrix negate(const SeifertMatrix& A) {
  return SeifertMatrix(A.epsilon(), A.sizes(), Int(-1) * A.entries(),
                       A.relaxed());
}

struct MetabolicCertificate {
  std::vector<ZMatrix> blocks;  // P_i of shape 2g_i x 2g_i
};

// true iff every P_i*A_ij*P_j^t has an exactly-zero g_i x g_j upper-left
// corner.  Throws on non-unimodular or misshapen certificates.
inline bool verify_metabolic(const SeifertMatrix& A,
                             const MetabolicCertificate& P) {
  if (static_cast<int>(P.blocks.size()) != A.m())
    throw std::invalid_argument("certificate block count mismatch");
  for (int i = 1; i <= A.m(); ++i) {
    const ZMatrix& Pi = P.blocks[i - 1];
    if (Pi.rows() != 2 * static_cast<size_t>(A.g(i)) || !Pi.is_square())
      throw std::invalid_argument("certificate block " + std::to_string(i) +
                                  " has wrong shape");
    Int d = det_integer(Pi);
    if (d != 1 && d != -1)
      throw std::invalid_argument("certificate block " + std::to_string(i) +
                                  " is not unimodular (det " + d.get_str() +
                                  ")");
  }
  for (int i = 1; i <= A.m(); ++i)
    for (int j = 1; j <= A.m(); ++j) {
      ZMatrix T = P.blocks[i - 1] * A.block(i, j) *
                  P.blocks[j - 1].transpose();
      for (int r = 0; r < A.g(i); ++r)
        for (int c = 0; c < A.g(j); ++c)
          if (T(r, c) != 0) return false;
    }
  return true;
}

// The doubled matrix block_sum(A, negate(A)) is metabolic via the diagonal
// Lagrangian: in each component, new basis (e_s + f_s ; f_s), realized by the
// unimodular shear P_i = [[I, I], [0, I]] in 2g_i-blocks.
inline MetabolicCertificate doubling_certificate(const SeifertMatrix& A) {
  MetabolicCertificate cert;
  for (int i = 1; i <= A.m(); ++i) {
    size_t h = 2 * static_cast<size_t>(A.g(i));
    ZMatrix Pi = ZMatrix::identity(2 * h);
    for (size_t r = 0; r < h; ++r) Pi(r, h + r) = 1;
    cert.blocks.push_back(Pi);
  }
  return cert;
}

// Random unimodular matrix built as a product of elementary operations
// (shears with coefficients in [-entry_bound, entry_bound], row swaps, sign
// flips), so unimodularity holds by construction.
inline ZMatrix random_unimodular(size_t n, std::mt19937_64& rng,
                                 int entry_bound = 3, int ops = 0) {
  ZMatrix M = ZMatrix::identity(n);
  if (n < 2) return M;
  std::uniform_int_distribution<int> coef(-entry_bound, entry_bound);
  std::uniform_int_distribution<size_t> row(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  if (ops <= 0) ops = static_cast<int>(2 * n);
  for (int t = 0; t < ops; ++t) {
    size_t r = row(rng), s = row(rng);
    switch (kind(rng)) {
      case 0: {  // shear: row r += c * row s
        if (r == s) break;
        Int c(coef(rng));
        for (size_t j = 0; j < n; ++j) M(r, j) = M(r, j) + c * M(s, j);
        break;
      }
      case 1: {  // swap rows
        if (r == s) break;
        for (size_t j = 0; j < n; ++j) std::swap(M(r, j), M(s, j));
        break;
      }
      case 2: {  // flip a row sign
        for (size_t j = 0; j < n; ++j) M(r, j) = -M(r, j);
        break;
      }
      default: {  // column shear keeps det too
        if (r == s) break;
        Int c(coef(rng));
        for (size_t j = 0; j < n; ++j) M(j, r) = M(j, r) + c * M(j, s);
        break;
      }
    }
  }
  return M;
}

// Bounded random search for a metabolic certificate: candidate blocks are
// random unimodular matrices (elementary-operation products).  Returns the
// first certificate that verifies, or nullopt after `budget` attempts.
// Deterministic for a fixed seed.  Suitable for small blocks only.
inline std::optional<MetabolicCertificate> metabolic_search(
    const SeifertMatrix& A, size_t budget, uint64_t seed, int entry_bound = 3) {
  std::mt19937_64 rng(seed);
  for (size_t attempt = 0; attempt < budget; ++attempt) {
    MetabolicCertificate cert;
    for (int i = 1; i <= A.m(); ++i)
      cert.blocks.push_back(random_unimodular(
          2 * static_cast<size_t>(A.g(i)), rng, entry_bound));
    if (verify_metabolic(A, cert)) return cert;
  }
  return std::nullopt;
}

}  // namespace blk
