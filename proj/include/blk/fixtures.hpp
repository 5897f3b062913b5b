#pragma once
// Shipped example data: the worked examples the library reproduces, exposed
// both as in-memory objects and as JSON fixture files for the CLI.

#include <string>
#include <utility>
#include <vector>

#include "blk/io.hpp"
#include "blk/reps.hpp"
#include "blk/seifert.hpp"

namespace blk::fixtures {

namespace detail {

inline ZMatrix zmat(const std::vector<std::vector<long>>& rows) {
  ZMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace detail

// Three-component genus-(1,2,2) example with rho = -2 at the shipped
// representation (which is singular: the twisted matrix has nullity 2).
inline SeifertMatrix ko_10x10() {
  return SeifertMatrix(-1, {1, 2, 2},
                       detail::zmat({{0, 1, 1, 0, 0, 0, 0, 0, 0, 0},
                                     {0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
                                     {1, 0, 0, 1, 0, 0, 1, 0, 0, 0},
                                     {0, 0, 0, -1, 0, 0, 0, 0, 0, 0},
                                     {0, 0, 0, 0, 0, -1, 0, 0, -1, 0},
                                     {0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
                                     {0, 1, 1, 0, 0, 0, 0, 1, 0, 0},
                                     {0, 0, 0, 0, 0, 0, 0, -1, 0, 0},
                                     {0, 0, 0, 0, -1, 0, 0, 0, 0, -1},
                                     {0, 0, 0, 0, 0, 0, 0, 0, 0, 1}}));
}

// U_1 the transposition, U_2 = U_3 = diag(zeta_8, zeta_8^5); generates a
// 2-group of order 16 inside U(2).
inline UnitaryTuple ko_rep() {
  CMatrix u1(2, 2);
  u1(0, 1) = Cyclotomic::one();
  u1(1, 0) = Cyclotomic::one();
  CMatrix u2(2, 2);
  u2(0, 0) = Cyclotomic::root(8, 1);
  u2(1, 1) = Cyclotomic::root(8, 5);
  return blk::make_tuple(std::vector<CMatrix>{u1, u2, u2});
}

// Two-component genus-(2,1) example, as printed in the source: violates the
// off-diagonal axiom at entry pair (1,5)/(5,1).
inline SeifertMatrix example_6x6_printed() {
  return SeifertMatrix(-1, {2, 1},
                       detail::zmat({{0, 0, 0, 0, 0, 0},
                                     {1, 0, 0, -1, 0, 0},
                                     {0, 0, 1, 0, 0, 1},
                                     {0, 1, -1, -2, 0, 0},
                                     {1, 0, 0, 0, -2, 0},
                                     {0, 0, 1, 0, 1, 1}}),
                       true);
}

// Single-entry axiom repair, variant A: set A[1,6->5] entry (1,5) [1-based] to
// match -eps*A[5,1] = 1.  Valid, but its Alexander polynomial does NOT match
// the recorded product formula.
inline SeifertMatrix example_6x6_fixA() {
  ZMatrix m = example_6x6_printed().entries();
  m(0, 4) = 1;
  return SeifertMatrix(-1, {2, 1}, m);
}

// Single-entry axiom repair, variant B: zero A[5,1].  Valid, Alexander
// polynomial also does not match the recorded formula.
inline SeifertMatrix example_6x6_fixB() {
  ZMatrix m = example_6x6_printed().entries();
  m(4, 0) = 0;
  return SeifertMatrix(-1, {2, 1}, m);
}

// Two-entry correction whose Alexander polynomial equals the recorded
//   -(t1*t2 + 1/(t1*t2)) - (t2/t1 + t1/t2) + 5
// up to the unit t1^2*t2.  This is the variant the fixtures pin.
inline SeifertMatrix example_6x6_corrected() {
  ZMatrix m = example_6x6_printed().entries();
  m(0, 4) = 1;
  m(1, 3) = 1;
  return SeifertMatrix(-1, {2, 1}, m);
}

// Alternative three-entry correction with the same Alexander polynomial.
inline SeifertMatrix example_6x6_c1() {
  ZMatrix m = example_6x6_printed().entries();
  m(0, 4) = 1;
  m(3, 4) = -2;
  m(4, 3) = -2;
  return SeifertMatrix(-1, {2, 1}, m);
}

// The boundary connected sum with the negated reversed copy: the matrix of
// L # -L~, metabolic by construction of the sum.
inline SeifertMatrix doubled(const SeifertMatrix& A) {
  return block_sum(A, negate(reverse(A)));
}

inline SeifertMatrix example_12x12_doubled() {
  return doubled(example_6x6_corrected());
}

inline SeifertMatrix example_12x12_doubled_printed() {
  return doubled(example_6x6_printed());
}

// U_1 = [[0,i],[1,0]], U_2 = diag(i,-i).
inline UnitaryTuple doubled_rep() {
  CMatrix u1(2, 2);
  u1(0, 1) = Cyclotomic::root(4, 1);
  u1(1, 0) = Cyclotomic::one();
  CMatrix u2(2, 2);
  u2(0, 0) = Cyclotomic::root(4, 1);
  u2(1, 1) = Cyclotomic::root(4, 3);
  return blk::make_tuple(std::vector<CMatrix>{u1, u2});
}

// Two-component genus-(1,1) example carrying the hermitian form tuple below;
// sigma(A, F) = -2.
inline SeifertMatrix example_4x4() {
  return SeifertMatrix(-1, {1, 1},
                       detail::zmat({{0, 1, 0, 1},
                                     {0, 0, 2, 1},
                                     {0, 2, 1, 0},
                                     {1, 1, 1, 0}}));
}

inline FormTuple example_4x4_forms() {
  FormTuple F;
  F.m = 2;
  F.dims = {2, 2};
  auto cm = [](std::initializer_list<std::initializer_list<long>> rows) {
    CMatrix m(2, 2);
    size_t r = 0;
    for (const auto& row : rows) {
      size_t c = 0;
      for (long v : row) m(r, c++) = Cyclotomic(Rational(v));
      ++r;
    }
    return m;
  };
  F.blocks[{1, 1}] = cm({{4, 1}, {3, 0}});
  F.blocks[{1, 2}] = cm({{4, 1}, {2, 1}});
  F.blocks[{2, 2}] = cm({{1, 2}, {4, 1}});
  return F;
}

// One component of genus zero: the Seifert matrix of the trivial link.
inline SeifertMatrix trivial_0x0() {
  return SeifertMatrix(-1, {0}, ZMatrix(0, 0));
}

// Recorded Alexander polynomial of the 6x6 example:
// -(t1*t2 + t1^-1*t2^-1) - (t1^-1*t2 + t1*t2^-1) + 5.
inline LaurentPoly alexander_target() {
  LaurentPoly t = LaurentPoly::monomial(2, {1, 1}, Int(-1));
  t = t + LaurentPoly::monomial(2, {-1, -1}, Int(-1));
  t = t + LaurentPoly::monomial(2, {-1, 1}, Int(-1));
  t = t + LaurentPoly::monomial(2, {1, -1}, Int(-1));
  t = t + LaurentPoly::constant(2, Int(5));
  return t;
}

// All fixture files as (name, pretty JSON text) pairs.
inline std::vector<std::pair<std::string, std::string>> fixture_files() {
  auto dump = [](const json& j) { return j.dump(2) + "\n"; };
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("ko_10x10.json", dump(seifert_to_json(ko_10x10())));
  out.emplace_back("ko_rep.json", dump(rep_to_json(ko_rep())));
  out.emplace_back("example_6x6.json",
                   dump(seifert_to_json(example_6x6_printed())));
  out.emplace_back("example_6x6_fixA.json",
                   dump(seifert_to_json(example_6x6_fixA())));
  out.emplace_back("example_6x6_fixB.json",
                   dump(seifert_to_json(example_6x6_fixB())));
  out.emplace_back("example_6x6_corrected.json",
                   dump(seifert_to_json(example_6x6_corrected())));
  out.emplace_back("example_6x6_c1.json",
                   dump(seifert_to_json(example_6x6_c1())));
  out.emplace_back("example_12x12_doubled.json",
                   dump(seifert_to_json(example_12x12_doubled())));
  out.emplace_back("example_12x12_doubled_printed.json",
                   dump(seifert_to_json(example_12x12_doubled_printed())));
  out.emplace_back("doubled_rep.json", dump(rep_to_json(doubled_rep())));
  out.emplace_back("example_4x4.json", dump(seifert_to_json(example_4x4())));
  out.emplace_back("example_4x4_forms.json",
                   dump(forms_to_json(example_4x4_forms())));
  out.emplace_back("trivial_0x0.json", dump(seifert_to_json(trivial_0x0())));
  return out;
}

}  // namespace blk::fixtures
