// Tests for unitary tuples, monomial constructions, multiplicative closures,
// finite groups, induced representations, and unitary eigenvalues.
#include <catch2/catch_amalgamated.hpp>

#include <blk/fixtures.hpp>
#include <blk/reps.hpp>

#include "support.hpp"

#include <algorithm>
#include <random>

using namespace blk;
using namespace testsup;

namespace {

CMatrix perm_matrix(const std::vector<int>& perm) {
  int k = static_cast<int>(perm.size());
  CMatrix u(k, k);
  for (int j = 0; j < k; ++j) u(perm[j], j) = Cyclotomic::one();
  return u;
}

}  // namespace

TEST_CASE("make_tuple enforces unitarity", "[reps]") {
  CMatrix good = perm_matrix({1, 0});
  UnitaryTuple t = blk::make_tuple(std::vector<CMatrix>{good, CMatrix::identity(2)});
  CHECK(t.m == 2);
  CHECK(t.k == 2);
  CHECK(t.mode == RepMode::exact);
  CHECK(t.U(1) == good);
  CHECK(t.U(2) == CMatrix::identity(2));

  CMatrix bad(2, 2);
  bad(0, 0) = Cyclotomic(2);
  bad(1, 1) = Cyclotomic(1);
  CHECK_THROWS_AS(blk::make_tuple(std::vector<CMatrix>{bad}), std::invalid_argument);
  CHECK_THROWS_AS(blk::make_tuple(std::vector<CMatrix>{}), std::invalid_argument);

  // Float tuples: tolerance separates near-unitary from garbage.
  FMatrix fid = FMatrix::identity(2);
  UnitaryTuple ft = blk::make_tuple(std::vector<FMatrix>{fid}, 1e-9);
  CHECK(ft.mode == RepMode::floating);
  FMatrix off = fid;
  off(0, 0) = ComplexF(1.0 + 1e-3, 0);
  CHECK_THROWS_AS(blk::make_tuple(std::vector<FMatrix>{off}, 1e-9),
                  std::invalid_argument);

  // as_float() of an exact tuple converts entrywise.
  auto fl = t.as_float();
  REQUIRE(fl.size() == 2);
  CHECK(std::abs(fl[0](1, 0) - ComplexF(1, 0)) < 1e-15);
}

TEST_CASE("pdp_element validates permutation and diagonal orders", "[reps]") {
  // Valid: 2-cycle with 4th-root entries (p = 2).
  CMatrix u = pdp_element(2, 2, {1, 0},
                          {Cyclotomic::root(4), Cyclotomic::one()});
  CHECK(detail::is_unitary_exact(u));
  CHECK(u(1, 0) == Cyclotomic::root(4));
  CHECK(u(0, 1) == Cyclotomic::one());

  // Bad permutation vector.
  CHECK_THROWS_AS(pdp_element(2, 2, {0, 0}, {Cyclotomic::one(), Cyclotomic::one()}),
                  std::invalid_argument);
  // Cycle length 3 is not a power of 2.
  CHECK_THROWS_AS(pdp_element(3, 2, {1, 2, 0},
                              {Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::one()}),
                  std::invalid_argument);
  // Diagonal entry of order 3 is rejected for p = 2.
  CHECK_THROWS_AS(pdp_element(2, 2, {1, 0},
                              {Cyclotomic::root(3), Cyclotomic::one()}),
                  std::invalid_argument);
  // Non-root-of-unity diagonal entry.
  CHECK_THROWS_AS(pdp_element(2, 2, {1, 0},
                              {Cyclotomic(2), Cyclotomic::one()}),
                  std::invalid_argument);
  // p must be prime.
  CHECK_THROWS_AS(pdp_element(2, 4, {1, 0},
                              {Cyclotomic::one(), Cyclotomic::one()}),
                  std::invalid_argument);
}

TEST_CASE("ff2_rep structure and scalar commutators", "[reps][property]") {
  std::mt19937_64 g(163);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(g() % 2);  // need m >= 2 for U_i, i >= 2
    int k = 1 + static_cast<int>(g() % 4);
    // chi(t_i) must be a k-th root of unity; z_j arbitrary roots of unity.
    std::vector<Cyclotomic> z, chi;
    for (int j = 0; j < k; ++j) z.push_back(random_root(12, g));
    for (int i = 0; i < m; ++i)
      chi.push_back(Cyclotomic::root(static_cast<unsigned>(k),
                                     static_cast<long>(g() % k)));
    UnitaryTuple a = ff2_rep(m, k, z, chi);
    REQUIRE(a.m == m);
    REQUIRE(a.k == k);

    // U_1 is the cyclic shift weighted by z: U_1 e_j = z_j e_{j+1}.
    const CMatrix& u1 = a.U(1);
    for (int j = 0; j < k; ++j) {
      CHECK(u1((j + 1) % k, j) == z[static_cast<size_t>(j)]);
      for (int r = 0; r < k; ++r)
        if (r != (j + 1) % k) CHECK(u1(r, j).is_zero());
    }

    // U_i (i >= 2) is diag(chi(t_i) chi(t_1)^j), j = 0..k-1.
    for (int i = 2; i <= m; ++i) {
      const CMatrix& ui = a.U(i);
      Cyclotomic want = chi[static_cast<size_t>(i - 1)];
      for (int j = 0; j < k; ++j) {
        CHECK(ui(j, j) == want);
        want *= chi[0];
      }
    }

    // Scalar commutator identities.
    Cyclotomic lam = chi[0].inverse();
    for (int i = 2; i <= m; ++i) {
      CMatrix c = commutator(a.U(1), a.U(i));
      CHECK(c == lam * CMatrix::identity(k));
      // Triple commutators are trivial because [U_1, U_i] is central.
      CMatrix t1 = commutator(c, a.U(1));
      CHECK(t1 == CMatrix::identity(k));
    }
    for (int i = 2; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        CHECK(commutator(a.U(i), a.U(j)) == CMatrix::identity(k));
  }

  // Character constraint chi(t_i)^k = 1 is enforced.
  CHECK_THROWS_AS(
      ff2_rep(2, 2, {Cyclotomic::one(), Cyclotomic::one()},
              {Cyclotomic::root(3), Cyclotomic::one()}),
      std::invalid_argument);
}

TEST_CASE("ca_precompose conjugates one slot", "[reps]") {
  UnitaryTuple ko = fixtures::ko_rep();
  UnitaryTuple out = ca_precompose(ko, 1, 2);
  CHECK(out.U(1) == ko.U(2) * ko.U(1) * ko.U(2).conj_transpose());
  CHECK(out.U(2) == ko.U(2));
  CHECK(out.U(3) == ko.U(3));
  CHECK_THROWS_AS(ca_precompose(ko, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ca_precompose(ko, 0, 2), std::out_of_range);
  CHECK_THROWS_AS(ca_precompose(ko, 1, 9), std::out_of_range);
}

TEST_CASE("tuple_word evaluates words with inverses", "[reps]") {
  UnitaryTuple ko = fixtures::ko_rep();
  CHECK(tuple_word(ko, {}) == CMatrix::identity(ko.k));
  CHECK(tuple_word(ko, {1}) == ko.U(1));
  CHECK(tuple_word(ko, {1, -1}) == CMatrix::identity(ko.k));
  CHECK(tuple_word(ko, {2, 3}) == ko.U(2) * ko.U(3));
  CHECK(tuple_word(ko, {-2}) == ko.U(2).conj_transpose());
  CHECK_THROWS_AS(tuple_word(ko, {5}), std::out_of_range);
}

TEST_CASE("closure orders of known generator sets", "[reps][closure]") {
  // diag(zeta_3, 1) and the swap generate a monomial group of order 18.
  CMatrix d(2, 2);
  d(0, 0) = Cyclotomic::root(3);
  d(1, 1) = Cyclotomic::one();
  ClosureResult c18 = closure({d, perm_matrix({1, 0})});
  CHECK_FALSE(c18.overflow);
  CHECK(c18.order == 18);
  CHECK(c18.is_p_group(3) == false);
  CHECK(c18.is_p_group(2) == false);

  // The 10x10 fixture representation generates a 2-group of order 16.
  UnitaryTuple ko = fixtures::ko_rep();
  ClosureResult cko = closure(ko.exact);
  CHECK_FALSE(cko.overflow);
  CHECK(cko.order == 16);
  CHECK(cko.is_p_group(2));

  // A rational rotation has infinite order: the bounded walk overflows.
  CMatrix rot(2, 2);
  rot(0, 0) = Cyclotomic(Rational(3, 5));
  rot(0, 1) = Cyclotomic(Rational(4, 5));
  rot(1, 0) = Cyclotomic(Rational(-4, 5));
  rot(1, 1) = Cyclotomic(Rational(3, 5));
  REQUIRE(detail::is_unitary_exact(rot));
  ClosureResult inf = closure({rot}, 200);
  CHECK(inf.overflow);
  CHECK(inf.order == 0);
  CHECK(inf.elements.empty());
  CHECK_FALSE(inf.is_p_group(2));

  // Non-unitary generators are rejected.
  CMatrix bad(2, 2);
  bad(0, 0) = Cyclotomic(2);
  CHECK_THROWS_AS(closure({bad}), std::invalid_argument);
}

TEST_CASE("finite group tables from closures verify the axioms",
          "[reps][closure]") {
  ClosureResult cko = closure(fixtures::ko_rep().exact);
  FiniteGroup gko = finite_group_from_closure(cko);
  CHECK(gko.order == 16);
  CHECK(gko.verify());
  CHECK(gko.mult(gko.identity, 3) == 3);
  CHECK(gko.mult(3, gko.inverse(3)) == gko.identity);

  FiniteGroup c6 = FiniteGroup::cyclic(6);
  CHECK(c6.verify());
  CHECK(c6.mult(4, 5) == 3);
  CHECK(c6.inverse(2) == 4);

  // Overflowed closures cannot be materialized.
  CMatrix rot(2, 2);
  rot(0, 0) = Cyclotomic(Rational(3, 5));
  rot(0, 1) = Cyclotomic(Rational(4, 5));
  rot(1, 0) = Cyclotomic(Rational(-4, 5));
  rot(1, 1) = Cyclotomic(Rational(3, 5));
  ClosureResult inf = closure({rot}, 100);
  CHECK_THROWS_AS(finite_group_from_closure(inf), std::domain_error);
}

TEST_CASE("induction from the full group and from the trivial subgroup",
          "[reps][induce]") {
  FiniteGroup c4 = FiniteGroup::cyclic(4);

  // Q = P: induction is the identity on representations.
  std::vector<CMatrix> beta;
  for (int a = 0; a < 4; ++a) {
    CMatrix u(1, 1);
    u(0, 0) = Cyclotomic::root(4, a);
    beta.push_back(u);
  }
  FiniteRep full = induce(c4, {0, 1, 2, 3}, beta);
  CHECK(full.dim == 1);
  CHECK(full.check());
  for (int a = 0; a < 4; ++a) CHECK(full.images[a] == beta[a]);

  // Q = {e} with the trivial 1-dim rep: induction is the regular rep.
  FiniteRep reg = induce(c4, {0}, std::vector<CMatrix>{CMatrix::identity(1)});
  CHECK(reg.dim == 4);
  CHECK(reg.check());
  for (size_t a = 1; a < 4; ++a) {
    // Non-identity elements act fixed-point-freely in the regular rep.
    Cyclotomic tr = Cyclotomic::zero();
    for (int j = 0; j < 4; ++j) tr += reg.images[a](j, j);
    CHECK(tr.is_zero());
  }

  // Subgroup {0,2} with a faithful character of Z/2.
  CMatrix minus(1, 1);
  minus(0, 0) = Cyclotomic(-1);
  FiniteRep half =
      induce(c4, {0, 2}, std::vector<CMatrix>{CMatrix::identity(1), minus});
  CHECK(half.dim == 2);
  CHECK(half.check());

  // Bad subgroups and bad homomorphisms are rejected.
  CHECK_THROWS_AS(induce(c4, {0, 1}, std::vector<CMatrix>{CMatrix::identity(1),
                                                          CMatrix::identity(1)}),
                  std::invalid_argument);  // {0,1} is not closed
  CHECK_THROWS_AS(induce(c4, {1, 3}, std::vector<CMatrix>{CMatrix::identity(1),
                                                          CMatrix::identity(1)}),
                  std::invalid_argument);  // missing identity
  CHECK_THROWS_AS(
      induce(c4, {0, 2}, std::vector<CMatrix>{CMatrix::identity(1),
                                              Cyclotomic(2) * CMatrix::identity(1)}),
      std::invalid_argument);  // beta not a homomorphism into unitaries
}

TEST_CASE("induced representations are homomorphisms on random subgroups",
          "[reps][induce][property]") {
  // Parent: the order-16 2-group from the fixture representation.
  ClosureResult cko = closure(fixtures::ko_rep().exact);
  FiniteGroup P = finite_group_from_closure(cko);
  REQUIRE(P.verify());

  std::mt19937_64 g(173);
  for (int trial = 0; trial < 30; ++trial) {
    // Random cyclic subgroup <a>.
    int a = static_cast<int>(g() % P.order);
    std::vector<int> Q{P.identity};
    int x = a;
    while (x != P.identity) {
      Q.push_back(x);
      x = P.mult(x, a);
    }
    std::sort(Q.begin(), Q.end());
    Q.erase(std::unique(Q.begin(), Q.end()), Q.end());

    // beta: power-consistent character of <a> built from a root of unity of
    // the right order.
    size_t n = Q.size();
    std::map<int, long> power;  // element -> exponent of a
    int cur = P.identity;
    for (size_t e = 0; e < n; ++e) {
      power[cur] = static_cast<long>(e);
      cur = P.mult(cur, a);
    }
    long shift = static_cast<long>(g() % n);
    std::vector<CMatrix> beta;
    for (int q : Q) {
      CMatrix u(1, 1);
      u(0, 0) = Cyclotomic::root(static_cast<unsigned>(n),
                                 shift * power.at(q) % static_cast<long>(n));
      beta.push_back(u);
    }
    FiniteRep ind = induce(P, Q, beta);
    CHECK(ind.dim == static_cast<int>(P.order / n));
    CHECK(ind.check());
  }
}

TEST_CASE("eigen_angles of monomial matrices is exact", "[reps][eigen]") {
  // The swap has eigenvalues +1 and -1 (angles 0 and 1/2).
  EigenAngles sw = eigen_angles(perm_matrix({1, 0}));
  REQUIRE(sw.mode == RepMode::exact);
  REQUIRE(sw.exact.size() == 2);
  CHECK(sw.exact[0] == Cyclotomic::one());
  CHECK(sw.exact[1] == Cyclotomic(-1));

  // diag(zeta_8^3, zeta_8) sorts by angle.
  CMatrix d(2, 2);
  d(0, 0) = Cyclotomic::root(8, 3);
  d(1, 1) = Cyclotomic::root(8);
  EigenAngles dd = eigen_angles(d);
  REQUIRE(dd.mode == RepMode::exact);
  CHECK(dd.exact[0] == Cyclotomic::root(8));
  CHECK(dd.exact[1] == Cyclotomic::root(8, 3));

  // A weighted 3-cycle: eigenvalues are cube roots of the cycle product.
  CMatrix c(3, 3);
  c(1, 0) = Cyclotomic::root(4);   // i
  c(2, 1) = Cyclotomic::one();
  c(0, 2) = Cyclotomic::one();
  EigenAngles cc = eigen_angles(c);
  REQUIRE(cc.mode == RepMode::exact);
  REQUIRE(cc.exact.size() == 3);
  for (const auto& z : cc.exact) CHECK(z.pow(3) == Cyclotomic::root(4));

  CHECK_THROWS_AS(eigen_angles(CMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("eigen_angles float path lands on the unit circle",
          "[reps][eigen][property]") {
  std::mt19937_64 g(181);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 1 + static_cast<int>(g() % 4);
    FMatrix u = blk::detail::haar_unitary(k, g);
    EigenAngles ea = eigen_angles(u, 1e-8);
    REQUIRE(ea.values.size() == static_cast<size_t>(k));
    // Eigenvalues lie on the unit circle and their product matches det-ish
    // magnitude: |prod| = 1.
    ComplexF prod(1, 0);
    for (auto z : ea.values) {
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-7);
      prod *= z;
    }
    CHECK(std::abs(std::abs(prod) - 1.0) < 1e-6);
  }

  // Exact non-monomial unitary falls back to the float path.
  Cyclotomic h = Cyclotomic(Rational(1, 2));
  CMatrix had(2, 2);
  // Unitary with rows (3/5, 4/5), (-4/5, 3/5): not monomial.
  had(0, 0) = Cyclotomic(Rational(3, 5));
  had(0, 1) = Cyclotomic(Rational(4, 5));
  had(1, 0) = Cyclotomic(Rational(-4, 5));
  had(1, 1) = Cyclotomic(Rational(3, 5));
  (void)h;
  EigenAngles fb = eigen_angles(had);
  CHECK(fb.mode == RepMode::floating);
  CHECK(fb.values.size() == 2);
}

TEST_CASE("sylow generators produce p-groups of the right order",
          "[reps][closure]") {
  auto group_order = [](int k, long p) {
    auto perms = sylow_p_permutations(k, p);
    std::vector<CMatrix> gens;
    for (const auto& pr : perms) gens.push_back(perm_matrix(pr));
    if (gens.empty()) gens.push_back(CMatrix::identity(k));
    ClosureResult cr = closure(gens);
    REQUIRE_FALSE(cr.overflow);
    return cr.order;
  };
  CHECK(group_order(4, 2) == 8);    // Sylow-2 of S_4 is dihedral of order 8
  CHECK(group_order(3, 3) == 3);    // a single 3-cycle
  CHECK(group_order(9, 3) == 81);   // Z_3 wr Z_3
  CHECK(group_order(2, 3) == 1);    // no 3-cycles fit in S_2
  CHECK(group_order(6, 2) == 16);   // blocks 4 + 2: D_8 x Z_2
}
