#pragma once
// Unitary representation tuples of the free group F_m and the finite-group
// machinery around them: PD_p(k) monomial elements, the shift/diagonal
// construction factoring through F/F_2, precomposition by special
// automorphisms, induced representations, multiplicative closure of exact
// matrix groups, and eigenvalue extraction for unitary matrices.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blk/cyclotomic.hpp"
#include "blk/matrix.hpp"
#include "blk/signature.hpp"

namespace blk {

enum class RepMode { exact, floating };

inline const char* to_string(RepMode m) {
  return m == RepMode::exact ? "exact" : "float";
}

namespace detail {

inline bool is_unitary_exact(const CMatrix& u) {
  return u.conj_transpose() * u == CMatrix::identity(u.rows());
}

inline double unitary_deviation(const FMatrix& u) {
  FMatrix d = u.conj_transpose() * u - FMatrix::identity(u.rows());
  return max_abs(d);
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline bool is_p_power(long n, long p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace detail

struct UnitaryTuple {
  int m = 0;  // number of free-group generators
  int k = 0;  // matrix dimension
  RepMode mode = RepMode::exact;
  std::vector<CMatrix> exact;   // used in exact mode
  std::vector<FMatrix> floats;  // used in float mode

  const CMatrix& U(int i) const { return exact.at(i - 1); }   // 1-based
  const FMatrix& Uf(int i) const { return floats.at(i - 1); }  // 1-based

  // Float view of the tuple (identity on float tuples).
  std::vector<FMatrix> as_float() const {
    if (mode == RepMode::floating) return floats;
    std::vector<FMatrix> out;
    out.reserve(exact.size());
    for (const auto& u : exact) out.push_back(to_float(u));
    return out;
  }
};

inline UnitaryTuple make_tuple(const std::vector<CMatrix>& mats) {
  if (mats.empty()) throw std::invalid_argument("empty tuple");
  size_t k = mats[0].rows();
  for (size_t i = 0; i < mats.size(); ++i) {
    if (!mats[i].is_square() || mats[i].rows() != k)
      throw std::invalid_argument("tuple matrices must be square of equal dimension");
    if (!detail::is_unitary_exact(mats[i]))
      throw std::invalid_argument("matrix " + std::to_string(i + 1) +
                                  " is not unitary (exact check failed)");
  }
  UnitaryTuple t;
  t.m = static_cast<int>(mats.size());
  t.k = static_cast<int>(k);
  t.mode = RepMode::exact;
  t.exact = mats;
  return t;
}

inline UnitaryTuple make_tuple(const std::vector<FMatrix>& mats,
                               double tol = 1e-9) {
  if (mats.empty()) throw std::invalid_argument("empty tuple");
  size_t k = mats[0].rows();
  for (size_t i = 0; i < mats.size(); ++i) {
    if (!mats[i].is_square() || mats[i].rows() != k)
      throw std::invalid_argument("tuple matrices must be square of equal dimension");
    double dev = detail::unitary_deviation(mats[i]);
    if (dev > tol) {
      std::ostringstream os;
      os << "matrix " << (i + 1) << " is not unitary (max deviation " << dev
         << " > tol " << tol << ")";
      throw std::invalid_argument(os.str());
    }
  }
  UnitaryTuple t;
  t.m = static_cast<int>(mats.size());
  t.k = static_cast<int>(k);
  t.mode = RepMode::floating;
  t.floats = mats;
  return t;
}

// Monomial PD_p(k) element: permutation * diagonal, with the permutation of
// p-power order and every diagonal entry a root of unity of p-power order.
// perm is 0-based one-line notation (j -> perm[j]).
inline CMatrix pdp_element(int k, long p, const std::vector<int>& perm,
                           const std::vector<Cyclotomic>& diag) {
  if (!detail::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (static_cast<int>(perm.size()) != k ||
      static_cast<int>(diag.size()) != k)
    throw std::invalid_argument("permutation/diagonal size mismatch");
  std::vector<bool> seen(k, false);
  for (int v : perm) {
    if (v < 0 || v >= k || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
  // permutation order is p-power iff every cycle length is a p-power
  std::vector<bool> vis(k, false);
  for (int s = 0; s < k; ++s) {
    if (vis[s]) continue;
    long len = 0;
    int x = s;
    while (!vis[x]) {
      vis[x] = true;
      x = perm[x];
      ++len;
    }
    if (!detail::is_p_power(len, p))
      throw std::invalid_argument("permutation order is not a power of " +
                                  std::to_string(p));
  }
  for (int j = 0; j < k; ++j) {
    auto r = diag[j].as_root_of_unity();
    if (!r)
      throw std::invalid_argument("diagonal entry " + std::to_string(j + 1) +
                                  " is not a root of unity");
    if (!detail::is_p_power(r->second, p))
      throw std::invalid_argument("diagonal entry " + std::to_string(j + 1) +
                                  " has order " + std::to_string(r->second) +
                                  ", not a power of " + std::to_string(p));
  }
  CMatrix u(k, k);
  for (int j = 0; j < k; ++j) u(perm[j], j) = diag[j];
  return u;
}

// The F/F_2 construction: U_1 is the cyclic shift carrying z_1..z_k
// (U_1 e_j = z_j e_{j+1}, indices mod k) and U_i = diag(chi(t_i),
// chi(t_1 t_i), ..., chi(t_1^{k-1} t_i)) for i >= 2, where chi is a character
// given by its values chi[i-1] = chi(t_i).  Requires chi(t_i)^k = 1 for all i.
inline UnitaryTuple ff2_rep(int m, int k, const std::vector<Cyclotomic>& z,
                            const std::vector<Cyclotomic>& chi) {
  if (m < 1 || k < 1) throw std::invalid_argument("need m,k >= 1");
  if (static_cast<int>(z.size()) != k)
    throw std::invalid_argument("need k shift values z_1..z_k");
  if (static_cast<int>(chi.size()) != m)
    throw std::invalid_argument("need m character values");
  for (int j = 0; j < k; ++j)
    if (!z[j].as_root_of_unity())
      throw std::invalid_argument("z_" + std::to_string(j + 1) +
                                  " is not a root of unity");
  for (int i = 0; i < m; ++i) {
    if (!chi[i].as_root_of_unity())
      throw std::invalid_argument("chi(t_" + std::to_string(i + 1) +
                                  ") is not a root of unity");
    if (!(chi[i].pow(k) - Cyclotomic::one()).is_zero())
      throw std::invalid_argument("character constraint chi(t_" +
                                  std::to_string(i + 1) + ")^k = 1 violated");
  }
  std::vector<CMatrix> mats;
  CMatrix u1(k, k);
  for (int j = 0; j < k; ++j) u1((j + 1) % k, j) = z[j];
  mats.push_back(u1);
  for (int i = 2; i <= m; ++i) {
    CMatrix ui(k, k);
    Cyclotomic c = chi[i - 1];
    for (int j = 0; j < k; ++j) {
      ui(j, j) = c;
      c *= chi[0];
    }
    mats.push_back(ui);
  }
  return blk::make_tuple(mats);
}

// Precomposition with the special automorphism t_i -> t_j t_i t_j^{-1}:
// replaces U_i by U_j U_i U_j^{-1}.  i, j are 1-based, i != j.
inline UnitaryTuple ca_precompose(const UnitaryTuple& alpha, int i, int j) {
  if (i < 1 || i > alpha.m || j < 1 || j > alpha.m)
    throw std::out_of_range("generator index out of range");
  if (i == j) throw std::invalid_argument("need i != j");
  UnitaryTuple out = alpha;
  if (alpha.mode == RepMode::exact) {
    const CMatrix& uj = alpha.exact[j - 1];
    out.exact[i - 1] = uj * alpha.exact[i - 1] * uj.conj_transpose();
  } else {
    const FMatrix& uj = alpha.floats[j - 1];
    out.floats[i - 1] = uj * alpha.floats[i - 1] * uj.conj_transpose();
  }
  return out;
}

// Evaluate the tuple on a word in the free group: word entries are +-i for
// t_i^{+-1}, 1-based.  Exact tuples only.
inline CMatrix tuple_word(const UnitaryTuple& alpha,
                          const std::vector<int>& word) {
  if (alpha.mode != RepMode::exact)
    throw std::invalid_argument("tuple_word needs an exact tuple");
  CMatrix acc = CMatrix::identity(alpha.k);
  for (int s : word) {
    int i = s > 0 ? s : -s;
    if (i < 1 || i > alpha.m) throw std::out_of_range("word letter");
    const CMatrix& u = alpha.exact[i - 1];
    acc = acc * (s > 0 ? u : u.conj_transpose());
  }
  return acc;
}

inline CMatrix commutator(const CMatrix& x, const CMatrix& y) {
  return x * y * x.conj_transpose() * y.conj_transpose();
}

// ---------------------------------------------------------------------------
// Multiplicative closure of exact unitary matrices.

struct ClosureResult {
  bool overflow = false;
  size_t order = 0;
  long common_order = 1;  // cyclotomic order containing every entry
  std::vector<CMatrix> elements;  // BFS order from the identity; empty on overflow

  bool is_p_group(long p) const {
    if (overflow || order == 0) return false;
    return detail::is_p_power(static_cast<long>(order), p);
  }
};

namespace detail {

// Canonical key at a fixed cyclotomic order: every value arising in the
// closure lies in Q(zeta_n), and the reduced coefficient vector at order n is
// a unique representation there (arithmetic may hand back entries at divisor
// orders, e.g. order-1 zeros, so keying without promotion is ambiguous).
inline std::string matrix_key(const CMatrix& m, long n) {
  std::ostringstream os;
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c)
      os << m(r, c).promoted(static_cast<unsigned>(n)).key() << ";";
  return os.str();
}

// Common cyclotomic order of a set of matrices.
inline long common_cyclotomic_order(const std::vector<CMatrix>& mats) {
  long n = 1;
  for (const auto& g : mats)
    for (size_t r = 0; r < g.rows(); ++r)
      for (size_t c = 0; c < g.cols(); ++c)
        n = lcm_long(n, static_cast<long>(g(r, c).order()));
  return n;
}

}  // namespace detail

// BFS closure of the multiplicative semigroup generated by exact unitary
// matrices (a group, since every element of a finite closure has finite
// order).  Overflow past `bound` is a value, not an error.
inline ClosureResult closure(const std::vector<CMatrix>& generators,
                             size_t bound = 100000) {
  ClosureResult res;
  if (generators.empty()) {
    res.order = 0;
    return res;
  }
  size_t k = generators[0].rows();
  for (const auto& g : generators) {
    if (!g.is_square() || g.rows() != k)
      throw std::invalid_argument("closure generators must be square of equal dimension");
    if (!detail::is_unitary_exact(g))
      throw std::invalid_argument("closure generators must be unitary");
  }
  long n = detail::common_cyclotomic_order(generators);
  res.common_order = n;
  CMatrix id = CMatrix::identity(k);

  std::map<std::string, size_t> index;
  std::vector<CMatrix> elems;
  std::vector<size_t> queue;
  elems.push_back(id);
  index.emplace(detail::matrix_key(id, n), 0);
  queue.push_back(0);
  for (size_t head = 0; head < queue.size(); ++head) {
    CMatrix cur = elems[queue[head]];
    for (const auto& g : generators) {
      CMatrix nxt = cur * g;
      std::string key = detail::matrix_key(nxt, n);
      if (index.count(key)) continue;
      if (elems.size() >= bound) {
        res.overflow = true;
        res.order = 0;
        res.elements.clear();
        return res;
      }
      index.emplace(key, elems.size());
      queue.push_back(elems.size());
      elems.push_back(nxt);
    }
  }
  res.order = elems.size();
  res.elements = std::move(elems);
  return res;
}

// ---------------------------------------------------------------------------
// Finite groups as multiplication tables, and induced representations.

struct FiniteGroup {
  size_t order = 0;
  std::vector<int> table;  // row-major order x order
  int identity = 0;

  int mult(int a, int b) const {
    return table[static_cast<size_t>(a) * order + static_cast<size_t>(b)];
  }
  int inverse(int a) const {
    for (size_t b = 0; b < order; ++b)
      if (mult(a, static_cast<int>(b)) == identity) return static_cast<int>(b);
    throw std::logic_error("element has no inverse");
  }
  // Full axioms check; O(order^3), intended for small groups.
  bool verify() const {
    if (order == 0 || table.size() != order * order) return false;
    for (size_t a = 0; a < order; ++a)
      if (mult(identity, a) != static_cast<int>(a) ||
          mult(static_cast<int>(a), identity) != static_cast<int>(a))
        return false;
    for (size_t a = 0; a < order; ++a) {
      bool has_inv = false;
      for (size_t b = 0; b < order; ++b)
        if (mult(static_cast<int>(a), static_cast<int>(b)) == identity)
          has_inv = true;
      if (!has_inv) return false;
    }
    for (size_t a = 0; a < order; ++a)
      for (size_t b = 0; b < order; ++b)
        for (size_t c = 0; c < order; ++c)
          if (mult(mult(a, b), static_cast<int>(c)) !=
              mult(static_cast<int>(a), mult(b, c)))
            return false;
    return true;
  }

  static FiniteGroup cyclic(size_t n) {
    FiniteGroup g;
    g.order = n;
    g.identity = 0;
    g.table.resize(n * n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        g.table[a * n + b] = static_cast<int>((a + b) % n);
    return g;
  }
};

// Materialize the multiplication table of a closure.  The table costs
// order^2 exact matrix products, so this is capped.
inline FiniteGroup finite_group_from_closure(const ClosureResult& cr,
                                             size_t table_cap = 4096) {
  if (cr.overflow) throw std::domain_error("closure overflowed; no table");
  if (cr.order > table_cap)
    throw std::domain_error("group order " + std::to_string(cr.order) +
                            " exceeds table cap " + std::to_string(table_cap));
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < cr.elements.size(); ++i)
    index.emplace(detail::matrix_key(cr.elements[i], cr.common_order), i);
  FiniteGroup g;
  g.order = cr.order;
  g.identity = 0;  // BFS starts from the identity
  g.table.resize(cr.order * cr.order);
  for (size_t a = 0; a < cr.order; ++a)
    for (size_t b = 0; b < cr.order; ++b) {
      CMatrix p = cr.elements[a] * cr.elements[b];
      auto it = index.find(detail::matrix_key(p, cr.common_order));
      if (it == index.end())
        throw std::logic_error("closure set not closed under products");
      g.table[a * cr.order + b] = static_cast<int>(it->second);
    }
  return g;
}

struct FiniteRep {
  FiniteGroup group;
  int dim = 0;
  std::vector<CMatrix> images;  // one per group element index

  // Exhaustive homomorphism check against the table.
  bool check() const {
    if (images.size() != group.order) return false;
    if (!(images[group.identity] == CMatrix::identity(dim))) return false;
    for (size_t a = 0; a < group.order; ++a)
      for (size_t b = 0; b < group.order; ++b)
        if (!(images[group.mult(static_cast<int>(a), static_cast<int>(b))] ==
              images[a] * images[b]))
          return false;
    return true;
  }
};

// Induced representation: P a finite group, Q a subgroup given by element
// indices, beta_images[t] the image of Q[t] under a representation of Q.
// Coset representatives are the smallest element index per left coset, with
// the identity representing its own coset.  Result dimension k*[P:Q].
inline FiniteRep induce(const FiniteGroup& P, const std::vector<int>& Q,
                        const std::vector<CMatrix>& beta_images) {
  if (Q.empty() || beta_images.size() != Q.size())
    throw std::invalid_argument("subgroup/representation size mismatch");
  std::map<int, size_t> qpos;
  for (size_t t = 0; t < Q.size(); ++t) {
    if (Q[t] < 0 || static_cast<size_t>(Q[t]) >= P.order)
      throw std::invalid_argument("subgroup element out of range");
    if (!qpos.emplace(Q[t], t).second)
      throw std::invalid_argument("duplicate subgroup element");
  }
  if (!qpos.count(P.identity))
    throw std::invalid_argument("Q is not a subgroup (missing identity)");
  for (int a : Q)
    for (int b : Q)
      if (!qpos.count(P.mult(a, b)))
        throw std::invalid_argument("Q is not a subgroup (not closed)");
  for (int a : Q)
    if (!qpos.count(P.inverse(a)))
      throw std::invalid_argument("Q is not a subgroup (missing inverse)");
  int k = beta_images.empty() ? 0 : static_cast<int>(beta_images[0].rows());
  for (const auto& b : beta_images)
    if (!b.is_square() || static_cast<int>(b.rows()) != k)
      throw std::invalid_argument("beta images must be square of equal dimension");
  if (!(beta_images[qpos[P.identity]] == CMatrix::identity(k)))
    throw std::invalid_argument("beta does not map the identity to id");
  for (int a : Q)
    for (int b : Q)
      if (!(beta_images[qpos[P.mult(a, b)]] ==
            beta_images[qpos[a]] * beta_images[qpos[b]]))
        throw std::invalid_argument("beta is not a homomorphism on Q");

  // Left cosets aQ; representative = smallest element index, identity coset
  // represented by the identity.
  std::vector<int> coset_of(P.order, -1);
  std::vector<int> reps;
  for (size_t a = 0; a < P.order; ++a) {
    if (coset_of[a] != -1) continue;
    int rep = static_cast<int>(a);
    std::vector<int> members;
    bool has_identity = false;
    for (int q : Q) {
      int x = P.mult(static_cast<int>(a), q);
      members.push_back(x);
      if (x == P.identity) has_identity = true;
    }
    if (has_identity) rep = P.identity;
    int cid = static_cast<int>(reps.size());
    reps.push_back(rep);
    for (int x : members) coset_of[x] = cid;
  }
  int d = static_cast<int>(reps.size());

  FiniteRep out;
  out.group = P;
  out.dim = k * d;
  out.images.reserve(P.order);
  for (size_t a = 0; a < P.order; ++a) {
    CMatrix img(out.dim, out.dim);
    for (int v = 0; v < d; ++v) {
      int av = P.mult(static_cast<int>(a), reps[v]);
      int u = coset_of[av];
      int x = P.mult(P.inverse(reps[u]), av);
      auto it = qpos.find(x);
      if (it == qpos.end())
        throw std::logic_error("coset decomposition failure");
      img.set_block(static_cast<size_t>(u) * k, static_cast<size_t>(v) * k,
                    beta_images[it->second]);
    }
    out.images.push_back(img);
  }
  return out;
}

inline FiniteRep induce(const FiniteGroup& P, const std::vector<int>& Q,
                        const FiniteRep& beta) {
  if (beta.group.order != Q.size())
    throw std::invalid_argument("beta group order does not match Q");
  // beta's abstract table must agree with P's restricted to Q
  std::map<int, size_t> qpos;
  for (size_t t = 0; t < Q.size(); ++t) qpos.emplace(Q[t], t);
  for (size_t s = 0; s < Q.size(); ++s)
    for (size_t t = 0; t < Q.size(); ++t) {
      int prod = P.mult(Q[s], Q[t]);
      auto it = qpos.find(prod);
      if (it == qpos.end() ||
          beta.group.mult(static_cast<int>(s), static_cast<int>(t)) !=
              static_cast<int>(it->second))
        throw std::invalid_argument("beta group table inconsistent with Q in P");
    }
  return induce(P, Q, beta.images);
}

// ---------------------------------------------------------------------------
// Eigenvalues of unitary matrices.

struct EigenAngles {
  RepMode mode = RepMode::exact;
  std::vector<Cyclotomic> exact;   // exact mode only
  std::vector<ComplexF> values;    // always filled
};

namespace detail {

// Monomial decomposition: exactly one nonzero per row and column, all
// entries roots of unity.  Returns (perm, entries) or nullopt.
inline std::optional<std::pair<std::vector<int>, std::vector<Cyclotomic>>>
monomial_decompose(const CMatrix& u) {
  int k = static_cast<int>(u.rows());
  std::vector<int> perm(k, -1);
  std::vector<Cyclotomic> val(k);
  std::vector<int> row_hits(k, 0);
  for (int j = 0; j < k; ++j) {
    int hit = -1;
    for (int r = 0; r < k; ++r) {
      if (u(r, j).is_zero()) continue;
      if (hit != -1) return std::nullopt;
      hit = r;
    }
    if (hit == -1) return std::nullopt;
    if (!u(hit, j).as_root_of_unity()) return std::nullopt;
    perm[j] = hit;
    val[j] = u(hit, j);
    if (++row_hits[hit] > 1) return std::nullopt;
  }
  return std::make_pair(perm, val);
}

// Eigenvalues of a float unitary via the commuting hermitian pair
// K = (U+U^*)/2, S = (U-U^*)/(2i): diagonalize K, then S restricted to each
// K-eigenvalue cluster; z = kappa + i*sigma, renormalized to |z| = 1.
inline std::vector<ComplexF> unitary_eigenvalues_float(const FMatrix& u) {
  int k = static_cast<int>(u.rows());
  if (k == 0) return {};
  FMatrix ustar = u.conj_transpose();
  FMatrix K(k, k), S(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      K(r, c) = (u(r, c) + ustar(r, c)) / 2.0;
      S(r, c) = (u(r, c) - ustar(r, c)) / ComplexF(0, 2);
    }
  FMatrix V = FMatrix::identity(k);
  std::vector<double> kappa = jacobi_hermitian(K, &V);
  FMatrix Sp = V.conj_transpose() * S * V;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return kappa[a] < kappa[b]; });
  std::vector<ComplexF> out;
  const double cluster_tol = 1e-7;
  size_t s = 0;
  while (s < idx.size()) {
    size_t e = s + 1;
    while (e < idx.size() && kappa[idx[e]] - kappa[idx[e - 1]] < cluster_tol)
      ++e;
    size_t c = e - s;
    double kbar = 0;
    for (size_t t = s; t < e; ++t) kbar += kappa[idx[t]];
    kbar /= static_cast<double>(c);
    FMatrix sub(c, c);
    for (size_t r = 0; r < c; ++r)
      for (size_t q = 0; q < c; ++q) sub(r, q) = Sp(idx[s + r], idx[s + q]);
    std::vector<double> sig = jacobi_hermitian(sub);
    for (double sv : sig) {
      ComplexF z(kbar, sv);
      double a = std::abs(z);
      out.push_back(a > 0 ? z / a : ComplexF(1, 0));
    }
    s = e;
  }
  std::sort(out.begin(), out.end(), [](const ComplexF& a, const ComplexF& b) {
    double ta = std::arg(a), tb = std::arg(b);
    if (ta < 0) ta += 2 * std::acos(-1.0);
    if (tb < 0) tb += 2 * std::acos(-1.0);
    return ta < tb;
  });
  return out;
}

}  // namespace detail

// Eigenvalues of an exact unitary matrix: exact via the cycle-product rule
// for monomial matrices, float two-stage diagonalization otherwise.
inline EigenAngles eigen_angles(const CMatrix& u) {
  if (!u.is_square()) throw std::invalid_argument("eigen_angles of non-square");
  if (!detail::is_unitary_exact(u))
    throw std::invalid_argument("eigen_angles input is not unitary");
  EigenAngles ea;
  auto mono = detail::monomial_decompose(u);
  if (mono) {
    const auto& [perm, val] = *mono;
    int k = static_cast<int>(perm.size());
    std::vector<bool> vis(k, false);
    for (int s = 0; s < k; ++s) {
      if (vis[s]) continue;
      long c = 0;
      Cyclotomic w = Cyclotomic::one();
      int x = s;
      while (!vis[x]) {
        vis[x] = true;
        w *= val[x];
        x = perm[x];
        ++c;
      }
      auto r = w.as_root_of_unity();
      if (!r) throw std::logic_error("cycle product not a root of unity");
      long a = r->first, n = r->second;
      // c-th roots of e^{2 pi i a/n}: e^{2 pi i (a+un)/(nc)}, u = 0..c-1
      for (long t = 0; t < c; ++t)
        ea.exact.push_back(
            Cyclotomic::root(static_cast<unsigned>(n * c), a + t * n));
    }
    std::sort(ea.exact.begin(), ea.exact.end(),
              [](const Cyclotomic& x, const Cyclotomic& y) {
                auto rx = x.as_root_of_unity(), ry = y.as_root_of_unity();
                return make_rational(Int(rx->first), Int(rx->second)) <
                       make_rational(Int(ry->first), Int(ry->second));
              });
    ea.mode = RepMode::exact;
    for (const auto& z : ea.exact) ea.values.push_back(cyclo_to_complex(z));
    return ea;
  }
  ea.mode = RepMode::floating;
  ea.values = detail::unitary_eigenvalues_float(to_float(u));
  return ea;
}

inline EigenAngles eigen_angles(const FMatrix& u, double tol = 1e-9) {
  if (!u.is_square()) throw std::invalid_argument("eigen_angles of non-square");
  if (detail::unitary_deviation(u) > tol)
    throw std::invalid_argument("eigen_angles input is not unitary");
  EigenAngles ea;
  ea.mode = RepMode::floating;
  ea.values = detail::unitary_eigenvalues_float(u);
  return ea;
}

// ---------------------------------------------------------------------------
// Generators of a Sylow p-subgroup of S_k (iterated wreath construction on
// the base-p block decomposition).  Each generator has order p; the group
// they generate is a p-group.  0-based one-line notation.
inline std::vector<std::vector<int>> sylow_p_permutations(int k, long p) {
  if (!detail::is_prime(p)) throw std::invalid_argument("p must be prime");
  std::vector<std::vector<int>> gens;
  int pos = 0, rem = k;
  while (rem >= p) {
    long q = 1;
    while (q * p <= rem) q *= p;  // largest p-power block that fits
    // w_j shifts the first p^j segment by p^{j-1}; conjugates of the lower
    // levels under w_j fill the remaining sub-blocks, so <w_1..w_a> is the
    // full iterated wreath product of order p^((p^a-1)/(p-1)).
    for (long pj = p; pj <= q; pj *= p) {
      std::vector<int> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      long step = pj / p;
      for (long x = 0; x < pj; ++x)
        perm[pos + x] = pos + static_cast<int>((x + step) % pj);
      gens.push_back(perm);
    }
    pos += static_cast<int>(q);
    rem -= static_cast<int>(q);
  }
  return gens;
}

}  // namespace blk
