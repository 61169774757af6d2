#include "doctest.h"
#include "lyapna/classify.hpp"
#include "lyapna/errors.hpp"
#include "lyapna/parse.hpp"
#include "lyapna/sl2c.hpp"

using namespace lyapna;

namespace {

Series T(long num, long den = 1) { return Series::monomial(GRat(1), num, den); }
Series C(long n) { return Series::constant(GRat(n)); }

MeasureSpec nonelem() {
  MatNA g{T(-1), Series(), Series(), T(1)};
  MatNA h{C(1), C(1), C(1), C(2)};
  MeasureSpec s;
  s.gens.push_back({"g", g, Rat(1, 2)});
  s.gens.push_back({"hgh", h * g * h.inverse(), Rat(1, 2)});
  return s;
}

MeasureSpec constant_parabolics() {
  MeasureSpec s;
  s.gens.push_back({"u", MatNA{C(1), C(1), Series(), C(1)}, Rat(1, 2)});
  s.gens.push_back({"l", MatNA{C(1), Series(), C(1), C(1)}, Rat(1, 2)});
  return s;
}

MeasureSpec single_diag() {
  MeasureSpec s;
  s.gens.push_back({"g", MatNA{T(-1), Series(), Series(), T(1)}, Rat(1)});
  return s;
}

MeasureSpec affine_spec() {
  MeasureSpec s;
  s.gens.push_back({"a", MatNA{T(-1), Series(), Series(), T(1)}, Rat(1, 2)});
  s.gens.push_back({"b", MatNA{C(1), C(1), Series(), C(1)}, Rat(1, 2)});
  return s;
}

MeasureSpec zero_infty_spec() {
  MeasureSpec s;
  s.gens.push_back({"g", MatNA{T(-1), Series(), Series(), T(1)}, Rat(1, 2)});
  s.gens.push_back({"s", MatNA{Series(), -C(1), C(1), Series()}, Rat(1, 2)});
  return s;
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("hyperbolic pair found at length one") {
  auto pair = find_hyperbolic_pair(nonelem(), 3);
  REQUIRE(pair.has_value());
  CHECK(pair->first.size() == 1);
  CHECK(pair->second.size() == 1);
  // fixed sets {0, inf} and {1/2, 1}, computed by hand
  MeasureSpec s = nonelem();
  auto [a1, r1] = fixed_points(product_na(s, pair->first));
  auto [a2, r2] = fixed_points(product_na(s, pair->second));
  CHECK(a1 == P1NA::infinity());
  CHECK(r1 == P1NA::zero_point());
  CHECK(a2 == P1NA::from_affine(Series::constant(GRat(1))));
  CHECK(r2 == P1NA::from_affine(Series::constant(GRat(Rat(1, 2)))));
  CHECK(verify_witness(s, pair->first, pair->second));
}

TEST_CASE("good reduction finds no hyperbolic element") {
  CHECK(!find_hyperbolic_pair(constant_parabolics(), 4).has_value());
  GroupClass gc = classify_group(constant_parabolics(), 4);
  CHECK(gc.tag == GroupClass::Tag::GoodReductionSuspected);
}

TEST_CASE("single generator has a single fixed-point set") {
  CHECK(!find_hyperbolic_pair(single_diag(), 4).has_value());
  GroupClass gc = classify_group(single_diag(), 3);
  CHECK(gc.tag == GroupClass::Tag::ZeroInfty);
}

TEST_CASE("common fixed points") {
  auto cf1 = common_fixed_points(affine_spec());
  CHECK(cf1.kind == CommonFixedPoints::Kind::OneCommon);
  CHECK(*cf1.z1 == P1NA::infinity());

  auto cf2 = common_fixed_points(zero_infty_spec());
  CHECK(cf2.kind == CommonFixedPoints::Kind::TwoCommon);
  CHECK(cf2.has_swap);
  bool pair_ok = (*cf2.z1 == P1NA::zero_point() && *cf2.z2 == P1NA::infinity()) ||
                 (*cf2.z1 == P1NA::infinity() && *cf2.z2 == P1NA::zero_point());
  CHECK(pair_ok);

  auto cf3 = common_fixed_points(nonelem());
  CHECK(cf3.kind == CommonFixedPoints::Kind::None);
}

TEST_CASE("affine closed form") {
  GroupClass gc = classify_group(affine_spec(), 3);
  REQUIRE(gc.tag == GroupClass::Tag::Affine);
  CHECK(chi_na_affine(affine_spec(), *gc.conjugator) == Rat(1, 2));

  // symmetric measure: chi = 0. The cyclic group <g> preserves its own fixed
  // pair, so the dispatch lands in the diagonal case and falls back to the
  // affine formula.
  MeasureSpec sym;
  MatNA g{T(-1), C(1), Series(), T(1)};
  sym.gens.push_back({"g", g, Rat(1, 2)});
  sym.gens.push_back({"g^-1", g.inverse(), Rat(1, 2)});
  GroupClass gs = classify_group(sym, 3);
  REQUIRE(gs.tag == GroupClass::Tag::ZeroInfty);
  CHECK_THROWS_AS(chi_na_zero_infty(sym, *gs.conjugator), NoSwapElement);
  CHECK(chi_na_affine(sym, *gs.conjugator) == Rat(0));

  // integral upper-triangular generators with unit diagonal
  MeasureSpec upper;
  upper.gens.push_back({"u1", MatNA{C(1), C(1), Series(), C(1)}, Rat(1, 2)});
  upper.gens.push_back({"u2", MatNA{C(1), C(2), Series(), C(1)}, Rat(1, 2)});
  CHECK(chi_na_affine(upper, MatNA::identity()) == Rat(0));
}

TEST_CASE("zero-infinity closed form") {
  GroupClass gc = classify_group(zero_infty_spec(), 3);
  REQUIRE(gc.tag == GroupClass::Tag::ZeroInfty);
  CHECK(chi_na_zero_infty(zero_infty_spec(), *gc.conjugator) == Rat(0));

  MeasureSpec diag;
  diag.gens.push_back({"g", MatNA{T(-1), Series(), Series(), T(1)}, Rat(1, 2)});
  diag.gens.push_back({"g2", MatNA{T(-2), Series(), Series(), T(2)}, Rat(1, 2)});
  GroupClass gd = classify_group(diag, 3);
  REQUIRE(gd.tag == GroupClass::Tag::ZeroInfty);
  CHECK_THROWS_AS(chi_na_zero_infty(diag, *gd.conjugator), NoSwapElement);
  CHECK(chi_na_affine(diag, *gd.conjugator) == Rat(3, 2));
}

TEST_CASE("certified witnesses specialize to loxodromic pairs") {
  MeasureSpec s = nonelem();
  GroupClass gc = classify_group(s, 3);
  REQUIRE(gc.tag == GroupClass::Tag::NonElementaryCertified);
  auto [w1, w2] = *gc.witness;
  MatC m1 = specialize(product_na(s, w1), 1e-3);
  MatC m2 = specialize(product_na(s, w2), 1e-3);
  CHECK(classify_c(m1) == ClassC::Loxodromic);
  CHECK(classify_c(m2) == ClassC::Loxodromic);
  P1C f1 = attracting_fixed_point_c(m1);
  P1C f2 = attracting_fixed_point_c(m2);
  CHECK(dist(f1, f2) > 1e-3);
}

TEST_CASE("elliptic fixed points over Q(i) and unresolved cases") {
  // z -> -1/z fixes +-i; invariant pair with the identity-constrained set
  MeasureSpec rot;
  rot.gens.push_back({"j", MatNA{Series(), -C(1), C(1), Series()}, Rat(1)});
  auto cf = common_fixed_points(rot);
  CHECK(cf.kind == CommonFixedPoints::Kind::TwoCommon);

  // trace with non-square discriminant: tr = 1, disc = -3
  MeasureSpec bad;
  bad.gens.push_back({"e", MatNA{C(1), -C(1), C(1), Series()}, Rat(1)});
  CHECK_THROWS_AS(common_fixed_points(bad), EllipticUnresolved);
  // a lone elliptic generator is not proximal: good reduction suspected
  CHECK(classify_group(bad, 3).tag == GroupClass::Tag::GoodReductionSuspected);

  // proximal but unresolved at depth 1: hyperbolic plus the order-6 elliptic
  MeasureSpec mix;
  mix.gens.push_back({"g", MatNA{T(-1), Series(), Series(), T(1)}, Rat(1, 2)});
  mix.gens.push_back({"e", MatNA{C(1), -C(1), C(1), Series()}, Rat(1, 2)});
  GroupClass gc = classify_group(mix, 1);
  CHECK(gc.tag == GroupClass::Tag::Undetermined);
  // at depth 2 the pair (g, g*e-type word) certifies non-elementarity
  CHECK(classify_group(mix, 2).tag == GroupClass::Tag::NonElementaryCertified);
}

}  // TEST_SUITE
