// Tests for the eta function on the circle and the rho / sigma / sigma_f
// obstruction computations.
#include <catch2/catch_amalgamated.hpp>

#include <blk/eta.hpp>
#include <blk/fixtures.hpp>

#include "support.hpp"

#include <random>

using namespace blk;
using namespace testsup;

TEST_CASE("eta on exact roots of unity", "[eta]") {
  // eta(e^{2 pi i a}) = 0 at a = 0, otherwise 1 - 2a.
  CHECK(eta_circle(Cyclotomic::one()) == Rational(0));
  CHECK(eta_circle(Cyclotomic(-1)) == Rational(0));          // 1 - 2*(1/2)
  CHECK(eta_circle(Cyclotomic::root(4)) == Rational(1, 2));  // a = 1/4
  CHECK(eta_circle(Cyclotomic::root(4, 3)) == Rational(-1, 2));
  CHECK(eta_circle(Cyclotomic::root(3)) == Rational(1, 3));
  CHECK(eta_circle(Cyclotomic::root(3, 2)) == Rational(-1, 3));
  CHECK(eta_circle(Cyclotomic::root(8)) == Rational(3, 4));

  // Not on the unit circle, or not a root of unity: errors.
  CHECK_THROWS_AS(eta_circle(Cyclotomic(2)), std::invalid_argument);
  Cyclotomic z8 = Cyclotomic::root(8);
  CHECK_THROWS_AS(eta_circle(z8 + z8.conj()), std::invalid_argument);
}

TEST_CASE("eta float overload matches exact values", "[eta]") {
  std::mt19937_64 g(191);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned n = 1 + static_cast<unsigned>(g() % 16);
    long j = static_cast<long>(g() % n);
    Cyclotomic z = Cyclotomic::root(n, j);
    double want = eta_circle(z).get_d();
    double got = eta_circle(z.to_complex());
    CHECK(std::abs(got - want) < 1e-9);
  }
  CHECK_THROWS_AS(eta_circle(ComplexF(2, 0)), std::invalid_argument);
}

TEST_CASE("eta odd symmetry off the branch point", "[eta][property]") {
  std::mt19937_64 g(193);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned n = 2 + static_cast<unsigned>(g() % 15);
    long j = 1 + static_cast<long>(g() % (n - 1));  // exclude z = 1
    Cyclotomic z = Cyclotomic::root(n, j);
    if (z == Cyclotomic(-1)) {
      CHECK(eta_circle(z) == Rational(0));
      continue;
    }
    CHECK(eta_circle(z) + eta_circle(z.conj()) == Rational(0));
  }
  CHECK(eta_circle(Cyclotomic::one()) == Rational(0));
}

TEST_CASE("sigma of the 10x10 fixture", "[sigma]") {
  SeifertMatrix A = fixtures::ko_10x10();
  UnitaryTuple ko = fixtures::ko_rep();
  SigmaResult s = sigma(A, ko);
  CHECK(s.sign == -2);
  CHECK(s.singular);
  CHECK_FALSE(s.hermitized);
  CHECK(s.inertia.pos == 8);
  CHECK(s.inertia.neg == 10);
  CHECK(s.inertia.zero == 2);

  // Float mode agrees.
  UnitaryTuple kof = blk::make_tuple(ko.as_float(), 1e-9);
  SigmaResult sf = sigma(A, kof);
  CHECK(sf.mode == RepMode::floating);
  if (!sf.indeterminate) {
    CHECK(sf.sign == -2);
    CHECK(sf.inertia.pos == 8);
    CHECK(sf.inertia.neg == 10);
    CHECK(sf.inertia.zero == 2);
  }
}

TEST_CASE("sigma on relaxed non-hermitian input requires hermitize", "[sigma]") {
  SeifertMatrix printed = fixtures::example_12x12_doubled_printed();
  REQUIRE_FALSE(is_valid(printed));
  UnitaryTuple rep = fixtures::doubled_rep();
  CHECK_THROWS_AS(sigma(printed, rep), std::domain_error);
  SigmaResult s = sigma(printed, rep, /*hermitize=*/true);
  CHECK(s.hermitized);
  // The averaged form still has a definite inertia (12x12 tensor k = 2).
  CHECK(s.inertia.dim() == 24);
}

TEST_CASE("rho of the 10x10 fixture is exactly -2", "[rho]") {
  SeifertMatrix A = fixtures::ko_10x10();
  UnitaryTuple ko = fixtures::ko_rep();

  RhoResult r = rho(A, ko);
  CHECK(r.mode == RepMode::exact);
  CHECK(r.total == Rational(-2));
  CHECK(r.first_term == Rational(0));  // eps = -1 kills the eta term
  CHECK(r.signature_term == -2);
  CHECK(r.singular);
  CHECK(r.total_str() == "-2");
  CHECK(r.total_as_double() == -2.0);

  // Float mode lands on the same value.
  RhoResult rf = rho(A, blk::make_tuple(ko.as_float(), 1e-9));
  CHECK(rf.mode == RepMode::floating);
  if (!rf.indeterminate) CHECK(std::abs(rf.total_float - (-2.0)) < 1e-6);
}

TEST_CASE("rho of the trivial matrix is zero for any tuple", "[rho]") {
  SeifertMatrix T = fixtures::trivial_0x0();
  std::vector<CMatrix> mats{CMatrix::identity(1)};
  RhoResult r = rho(T, blk::make_tuple(mats));
  CHECK(r.total == Rational(0));
  CHECK_FALSE(r.singular);
  CHECK_FALSE(r.indeterminate);
}

TEST_CASE("abelian rho exact and float paths agree", "[rho][property]") {
  SeifertMatrix A = fixtures::ko_10x10();
  std::mt19937_64 g(197);
  for (int trial = 0; trial < 60; ++trial) {
    // Points of order dividing 24 keep the common cyclotomic field small.
    std::vector<Cyclotomic> zx;
    std::vector<ComplexF> zf;
    for (int i = 0; i < A.m(); ++i) {
      zx.push_back(Cyclotomic::root(24, static_cast<long>(g() % 24)));
      zf.push_back(zx.back().to_complex());
    }
    int exact = abelian_rho(A, zx);
    double fl = abelian_rho(A, zf);
    CHECK(std::abs(fl - exact) < 1e-6);
  }

  // The doubled 12x12 (two components of genus 3) vanishes at (-1,-1).
  SeifertMatrix D = fixtures::example_12x12_doubled();
  REQUIRE(D.m() == 2);
  std::vector<Cyclotomic> minus{Cyclotomic(-1), Cyclotomic(-1)};
  CHECK(abelian_rho(D, minus) == 0);
}

TEST_CASE("sigma_f on the 4x4 fixture forms", "[sigmaf]") {
  SeifertMatrix A = fixtures::example_4x4();
  FormTuple F = fixtures::example_4x4_forms();
  SigmaFResult s = sigma_f_full(A, F);
  CHECK(s.sign == -2);
  CHECK(s.inertia.pos == 3);
  CHECK(s.inertia.neg == 5);
  CHECK(s.inertia.zero == 0);
  CHECK_FALSE(s.singular);
  CHECK(sigma_f(A, F) == -2);
}

TEST_CASE("sigma_f rejects non-hermitian forms naming the offending pair",
          "[sigmaf]") {
  // Mirror form blocks F_ji are derived from F_ij, so the assembled form can
  // only lose hermiticity through a relaxed Seifert matrix whose off-diagonal
  // blocks violate the pairing axiom.
  SeifertMatrix printed = fixtures::example_6x6_printed();
  REQUIRE_FALSE(is_valid(printed));
  FormTuple F;
  F.m = 2;
  F.dims = {1, 1};
  F.blocks[{1, 1}] = CMatrix::identity(1);
  F.blocks[{2, 2}] = CMatrix::identity(1);
  CMatrix f12(1, 1);
  f12(0, 0) = Cyclotomic::one();
  F.blocks[{1, 2}] = f12;
  try {
    sigma_f_full(printed, F);
    FAIL("expected a domain_error");
  } catch (const std::domain_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("not hermitian") != std::string::npos);
    CHECK(msg.find("(1,2)") != std::string::npos);
  }
}

TEST_CASE("rho is additive under block sum", "[rho][property]") {
  std::mt19937_64 g(199);
  for (int trial = 0; trial < 40; ++trial) {
    int eps = (g() % 2) ? -1 : 1;
    int m = 1 + static_cast<int>(g() % 2);
    SeifertMatrix A = random_seifert(eps, random_sizes(eps, m, g), g);
    SeifertMatrix B = random_seifert(eps, random_sizes(eps, m, g), g);
    UnitaryTuple alpha = random_monomial_tuple(m, 1 + static_cast<int>(g() % 2),
                                               8, g);
    RhoResult ra = rho(A, alpha);
    RhoResult rb = rho(B, alpha);
    RhoResult rs = rho(block_sum(A, B), alpha);
    CHECK(rs.total == ra.total + rb.total);
  }
}

TEST_CASE("rho is invariant under conjugation automorphisms off the singular set",
          "[rho][property]") {
  std::mt19937_64 g(211);
  int done = 0;
  while (done < 40) {
    int eps = (g() % 2) ? -1 : 1;
    int m = 2;
    SeifertMatrix A = random_seifert(eps, random_sizes(eps, m, g), g);
    UnitaryTuple alpha = random_monomial_tuple(m, 2, 8, g);
    RhoResult base = rho(A, alpha);
    if (base.singular) continue;  // invariance is only claimed off the singular set
    int i = 1 + static_cast<int>(g() % m);
    int j = 1 + static_cast<int>(g() % m);
    if (i == j) j = (j % m) + 1;
    UnitaryTuple conj = ca_precompose(alpha, i, j);
    RhoResult moved = rho(A, conj);
    if (moved.singular) continue;
    CHECK(moved.total == base.total);
    ++done;
  }
}

TEST_CASE("sigma vanishes on doubled matrices off the singular set",
          "[sigma][property]") {
  std::mt19937_64 g(223);
  int done = 0;
  while (done < 40) {
    int eps = (g() % 2) ? -1 : 1;
    int m = 1 + static_cast<int>(g() % 2);
    auto sizes = random_sizes(eps, m, g);
    SeifertMatrix A = random_seifert(eps, sizes, g);
    SeifertMatrix S = block_sum(A, negate(A));
    UnitaryTuple alpha = random_monomial_tuple(m, 1 + static_cast<int>(g() % 2),
                                               8, g);
    SigmaResult s = sigma(S, alpha);
    if (s.singular) continue;
    CHECK(s.sign == 0);
    ++done;
  }
}
