#include "doctest.h"
#include "lyapna/errors.hpp"
#include "lyapna/sl2na.hpp"
#include "test_util.hpp"

using namespace lyapna;

namespace {

Series T(long num, long den = 1) { return Series::monomial(GRat(1), num, den); }
Series C(long n) { return Series::constant(GRat(n)); }

MatNA diag_t() { return {T(-1), Series(), Series(), T(1)}; }  // diag(1/t, t)

// h = [[1,1],[1,2]], integral with det 1
MatNA conj_h() { return {C(1), C(1), C(1), C(2)}; }

MatNA conjugated_diag() {
  MatNA h = conj_h();
  return h * diag_t() * h.inverse();
}

// Fixed two-generator alphabet used for random-word tests.
std::vector<MatNA> nonelem_gens() { return {diag_t(), conjugated_diag()}; }

MatNA random_word_product(testutil::SeriesGen& gen, const std::vector<MatNA>& gens, int len) {
  MatNA p = gens[gen.next() % gens.size()];
  for (int i = 1; i < len; ++i) p = p * gens[gen.next() % gens.size()];
  return p;
}

P1NA random_point(testutil::SeriesGen& gen) {
  uint64_t pick = gen.next() % 8;
  if (pick == 0) return P1NA::infinity();
  if (pick == 1) return P1NA::zero_point();
  return P1NA(gen.series(), gen.series());
}

}  // namespace

TEST_SUITE("sl2na") {

TEST_CASE("lognorm examples") {
  CHECK(lognorm(MatNA{T(-2), Series(), Series(), T(2)}) == Rat(2));
  CHECK(lognorm(MatNA::identity()) == Rat(0));
  CHECK(lognorm(MatNA{T(-1), C(1), Series(), T(1)}) == Rat(1));
}

TEST_CASE("norm axioms") {
  testutil::SeriesGen gen(101);
  auto gens = nonelem_gens();
  for (int k = 0; k < 200; ++k) {
    MatNA m1 = random_word_product(gen, gens, 1 + gen.next() % 4);
    MatNA m2 = random_word_product(gen, gens, 1 + gen.next() % 4);
    CHECK(lognorm(m1) >= 0);
    CHECK(lognorm(m1 * m2) <= lognorm(m1) + lognorm(m2));
    CHECK(lognorm(m1) == lognorm(m1.inverse()));
  }
}

TEST_CASE("classify examples") {
  CHECK(classify(diag_t()) == ClassNA::Hyperbolic);
  CHECK(classify(MatNA{C(1), C(1), Series(), C(1)}) == ClassNA::Parabolic);
  CHECK(classify(MatNA{Series(), -C(1), C(1), Series()}) == ClassNA::StrictlyElliptic);
  CHECK(classify(MatNA::identity()) == ClassNA::Identity);
  CHECK(classify(MatNA{-C(1), Series(), Series(), -C(1)}) == ClassNA::Identity);
}

TEST_CASE("kak examples") {
  Kak k1 = kak(diag_t());
  CHECK(Series::indistinguishable(k1.a.a, T(-1)));
  CHECK(k1.m.b.is_exact_zero());

  // [[1/t, 1], [0, t]] = id * diag(1/t, t) * [[1, t], [0, 1]]
  MatNA g{T(-1), C(1), Series(), T(1)};
  Kak k2 = kak(g);
  CHECK(Series::indistinguishable(k2.a.a, T(-1)));
  CHECK(Series::indistinguishable(k2.n.b, T(1)));
  MatNA re = k2.m * (k2.a * k2.n);
  for (auto [lhs, rhs] : {std::pair{&re.a, &g.a}, {&re.b, &g.b}, {&re.c, &g.c}, {&re.d, &g.d}})
    CHECK(Series::indistinguishable(*lhs, *rhs));

  // good reduction: a = id
  MatNA integral = conj_h();
  Kak k3 = kak(integral);
  CHECK(lognorm(k3.a) == Rat(0));
  CHECK((k3.a.a - C(1)).is_exact_zero());
}

TEST_CASE("kak reconstructs random words") {
  testutil::SeriesGen gen(103);
  auto gens = nonelem_gens();
  for (int k = 0; k < 200; ++k) {
    MatNA g = random_word_product(gen, gens, 1 + gen.next() % 6);
    Kak kk = kak(g);
    CHECK(lognorm(kk.a) == lognorm(g));
    CHECK(kk.m.is_integral());
    CHECK(kk.n.is_integral());
    CHECK((kk.m.det() - C(1)).is_zero_like());
    CHECK((kk.n.det() - C(1)).is_zero_like());
    MatNA re = kk.m * (kk.a * kk.n);
    CHECK(Series::indistinguishable(re.a, g.a));
    CHECK(Series::indistinguishable(re.b, g.b));
    CHECK(Series::indistinguishable(re.c, g.c));
    CHECK(Series::indistinguishable(re.d, g.d));
  }
}

TEST_CASE("sigma examples and bounds") {
  P1NA v11(C(1), C(1));
  CHECK(sigma_na(diag_t(), v11) == Rat(1));
  CHECK(sigma_na(diag_t(), P1NA::zero_point()) == Rat(-1));
  // integral matrices fix the Gauss norm
  testutil::SeriesGen gen(107);
  for (int k = 0; k < 100; ++k) {
    P1NA v = random_point(gen);
    CHECK(sigma_na(conj_h(), v) == Rat(0));
  }
}

TEST_CASE("cocycle relation is exact") {
  testutil::SeriesGen gen(109);
  auto gens = nonelem_gens();
  for (int k = 0; k < 500; ++k) {
    MatNA m1 = random_word_product(gen, gens, 1 + gen.next() % 4);
    MatNA m2 = random_word_product(gen, gens, 1 + gen.next() % 4);
    P1NA v = random_point(gen);
    CHECK(sigma_na(m1 * m2, v) == sigma_na(m1, mobius_apply(m2, v)) + sigma_na(m2, v));
    Rat s = sigma_na(m1, v);
    CHECK(s <= lognorm(m1));
    CHECK(s >= -lognorm(m1));
  }
}

TEST_CASE("mobius examples") {
  P1NA img = mobius_apply(diag_t(), P1NA(C(1), C(1)));
  CHECK(img == P1NA(C(1), T(2)));
  testutil::SeriesGen gen(113);
  auto gens = nonelem_gens();
  for (int k = 0; k < 100; ++k) {
    MatNA m = random_word_product(gen, gens, 1 + gen.next() % 4);
    P1NA v = random_point(gen);
    CHECK(mobius_apply(m, mobius_apply(m.inverse(), v)) == v);
  }
}

TEST_CASE("fixed points examples") {
  auto [att, rep] = fixed_points(diag_t());
  CHECK(att == P1NA::infinity());
  CHECK(rep == P1NA::zero_point());

  MatNA h = conj_h();
  auto [att2, rep2] = fixed_points(conjugated_diag());
  CHECK(att2 == mobius_apply(h, P1NA::infinity()));
  CHECK(rep2 == mobius_apply(h, P1NA::zero_point()));

  // attracting infinity, repelling -t/(1-t^2) = -t - t^3 - t^5 - ...
  MatNA g{T(-1), C(1), Series(), T(1)};
  auto [att3, rep3] = fixed_points(g);
  CHECK(att3 == P1NA::infinity());
  CHECK(rep3 == mobius_apply(g, rep3));
  Series z = -T(1) * (C(1) - T(2)).inv(8);
  CHECK(rep3 == P1NA::from_affine(z));
}

TEST_CASE("trace-norm identity for hyperbolic words") {
  testutil::SeriesGen gen(127);
  auto gens = nonelem_gens();
  int tested = 0;
  for (int k = 0; k < 400 && tested < 200; ++k) {
    MatNA g = random_word_product(gen, gens, 1 + gen.next() % 6);
    if (classify(g) != ClassNA::Hyperbolic) continue;
    ++tested;
    auto [att, rep] = fixed_points(g);
    Ord delta = dsph_na(att, rep);
    REQUIRE(delta.is_finite());
    Rat rhs = -g.trace().ord().q() + std::max(delta.q(), Rat(0));
    CHECK(lognorm(g) == rhs);
  }
  CHECK(tested == 200);
}

TEST_CASE("two-points lemma with constant zero") {
  testutil::SeriesGen gen(131);
  auto gens = nonelem_gens();
  for (int k = 0; k < 200; ++k) {
    MatNA g = random_word_product(gen, gens, 1 + gen.next() % 6);
    Rat s = std::max(sigma_na(g, P1NA::zero_point()), sigma_na(g, P1NA::infinity()));
    CHECK(s == lognorm(g));
  }
}

TEST_CASE("dsph examples") {
  CHECK(dsph_na(P1NA::zero_point(), P1NA::infinity()) == Ord(Rat(0)));
  P1NA z(T(1), C(1));
  CHECK(dsph_na(z, z) == Ord::pos_inf());
  CHECK(dsph_na(z, P1NA::zero_point()) == Ord(Rat(1)));
}

TEST_CASE("dhyp examples") {
  BallNA gauss = BallNA::gauss();
  CHECK(dhyp(gauss, BallNA(Series(), Rat(2))) == Rat(2));
  CHECK(dhyp(BallNA(Series(), Rat(1)), BallNA(T(1), Rat(2))) == Rat(1));
  // join of B(0,2) and B(1,2) is the Gauss point: 2 + 2
  CHECK(dhyp(BallNA(Series(), Rat(2)), BallNA(C(1), Rat(2))) == Rat(4));
  CHECK(dhyp(gauss, gauss) == Rat(0));
}

TEST_CASE("att/rep balls for the diagonal element") {
  auto [batt, brep] = att_rep_balls(diag_t());
  CHECK(brep.contains(P1NA::from_affine(T(1))));        // ord t >= 1
  CHECK(!brep.contains(P1NA::from_affine(C(1))));
  CHECK(batt.contains(P1NA::infinity()));               // ord(1/z) >= 1
  CHECK(batt.contains(P1NA::from_affine(T(-1))));
  CHECK(!batt.contains(P1NA::from_affine(C(1))));
  CHECK(!batt.contains(P1NA::zero_point()));
}

TEST_CASE("fixed points sit in their balls and balls are disjoint") {
  testutil::SeriesGen gen(137);
  auto gens = nonelem_gens();
  int tested = 0;
  for (int k = 0; k < 300 && tested < 100; ++k) {
    MatNA g = random_word_product(gen, gens, 1 + gen.next() % 6);
    if (classify(g) != ClassNA::Hyperbolic) continue;
    if (lognorm(g) == 0) continue;
    ++tested;
    auto [att, rep] = fixed_points(g);
    auto [batt, brep] = att_rep_balls(g);
    CHECK(batt.contains(att));
    CHECK(brep.contains(rep));
    CHECK(!batt.contains(rep));
    CHECK(!brep.contains(att));
  }
  CHECK(tested == 100);
}

TEST_CASE("sigma equals lognorm exactly off the unit ball around the repelling center") {
  // Sharp form of the expansion lemma: with c_rep = n^{-1}(0) from the KAK
  // factors, sigma(g, v) = L - min(s, 2L) where s = -log d_sph(v, c_rep).
  testutil::SeriesGen gen(139);
  auto gens = nonelem_gens();
  int tested = 0;
  for (int k = 0; k < 400 && tested < 100; ++k) {
    MatNA g = random_word_product(gen, gens, 2 + gen.next() % 5);
    Rat L = lognorm(g);
    if (L == 0) continue;
    ++tested;
    Kak kk = kak(g);
    P1NA c_rep = mobius_apply(kk.n.inverse(), P1NA::zero_point());
    for (int j = 0; j < 10; ++j) {
      P1NA v = random_point(gen);
      Ord s = dsph_na(v, c_rep);
      Rat expect = s.is_finite() ? Rat(L - std::min(s.q(), Rat(2 * L))) : Rat(-L);
      CHECK(sigma_na(g, v) == expect);
      if (s == Ord(Rat(0))) CHECK(sigma_na(g, v) == L);
    }
  }
  CHECK(tested == 100);
}

}  // TEST_SUITE
