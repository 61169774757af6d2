#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "lyapna/errors.hpp"
#include "lyapna/walks.hpp"
#include "test_util.hpp"

using namespace lyapna;

namespace {

Series T(long num, long den = 1) { return Series::monomial(GRat(1), num, den); }
Series C(long n) { return Series::constant(GRat(n)); }

MeasureSpec schrodinger() {
  MeasureSpec s;
  s.gens.push_back({"v0", MatNA{Series::monomial(GRat(2), -1), -C(1), C(1), Series()}, Rat(1, 2)});
  s.gens.push_back({"v1", MatNA{T(-1), -C(1), C(1), Series()}, Rat(1, 2)});
  return s;
}

MeasureSpec diag_pair() {
  MatNA g{T(-1), Series(), Series(), T(1)};
  MatNA h{C(1), C(1), C(1), C(2)};
  MeasureSpec s;
  s.gens.push_back({"g", g, Rat(1, 2)});
  s.gens.push_back({"hgh", h * g * h.inverse(), Rat(1, 2)});
  return s;
}

}  // namespace

TEST_SUITE("walks") {

TEST_CASE("sampling is deterministic per seed") {
  MeasureSpec s = schrodinger();
  SplitMix64 r1 = stream_for(42, 0);
  SplitMix64 r2 = stream_for(42, 0);
  Word w1 = sample_word(s, 50, r1);
  Word w2 = sample_word(s, 50, r2);
  CHECK(w1 == w2);
  SplitMix64 r3 = stream_for(43, 0);
  CHECK(sample_word(s, 50, r3) != w1);
  SplitMix64 r4 = stream_for(42, 0);
  CHECK(sample_word(s, 1, r4).size() == 1);
}

TEST_CASE("empirical frequencies within 3 sigma") {
  MeasureSpec s = schrodinger();
  s.gens[0].weight = Rat(1, 4);
  s.gens[1].weight = Rat(3, 4);
  IndexSampler sampler(s);
  SplitMix64 rng = stream_for(7, 0);
  const long N = 100000;
  long count0 = 0;
  for (long i = 0; i < N; ++i)
    if (sampler.sample(rng) == 0) ++count0;
  double p = 0.25;
  double sd = std::sqrt(p * (1 - p) * N);
  CHECK(std::abs(count0 - p * N) <= 3 * sd);
}

TEST_CASE("product of g and its inverse is the identity") {
  MeasureSpec s = diag_pair();
  MeasureSpec inv = s.inverted();
  MatNA p = s.gens[1].mat * inv.gens[1].mat;
  CHECK((p.a - C(1)).is_exact_zero());
  CHECK(p.b.is_exact_zero());
  CHECK(p.c.is_exact_zero());
  CHECK((p.d - C(1)).is_exact_zero());

  // truncated route: the same product is indistinguishable from the identity
  MeasureSpec both;
  both.gens.push_back(s.gens[1]);
  both.gens.push_back(inv.gens[1]);
  both.gens[0].weight = Rat(1, 2);
  both.gens[1].weight = Rat(1, 2);
  MatNA q = product_na(both, Word{0, 1}, 16);
  CHECK(Series::indistinguishable(q.a, C(1)));
  CHECK(q.b.is_zero_like());
  CHECK(q.c.is_zero_like());
}

TEST_CASE("schrodinger products have lognorm exactly n") {
  MeasureSpec s = schrodinger();
  SplitMix64 rng = stream_for(11, 3);
  for (int n : {1, 2, 5, 12, 20}) {
    Word w = sample_word(s, n, rng);
    CHECK(lognorm(product_na(s, w)) == Rat(n));
    CHECK(lognorm(product_na(s, w, 24)) == Rat(n));
    CHECK(lognorm(left_product_na(s, w, 24)) == Rat(n));
  }
  Word single{1};
  MatNA p = product_na(s, single);
  CHECK(Series::indistinguishable(p.a, s.gens[1].mat.a));
}

TEST_CASE("complex product accumulator") {
  MeasureSpec s = diag_pair();
  auto gens = s.specialize_all(0.05);
  ProductC one = product_c(gens, Word{1});
  CHECK(std::abs(one.lognorm() - lognorm_c(gens[1])) < 1e-12);
  ProductC direct = product_c(s, Word{1}, 0.05);
  CHECK(direct.lognorm() == one.lognorm());

  // word g g^{-1} ... : identity product stays near zero
  MeasureSpec both;
  both.gens.push_back(s.gens[1]);
  both.gens.push_back(s.inverted().gens[1]);
  auto gens2 = both.specialize_all(0.05);
  Word w;
  for (int k = 0; k < 20; ++k) {
    w.push_back(0);
    w.push_back(1);
  }
  ProductC idp = product_c(gens2, w);
  CHECK(std::abs(idp.lognorm()) <= static_cast<double>(w.size()) * 1e-9);
}

TEST_CASE("schrodinger complex ratio near 1 at t = 0.01") {
  MeasureSpec s = schrodinger();
  auto gens = s.specialize_all(0.01);
  SplitMix64 rng = stream_for(17, 1);
  Word w = sample_word(s, 100, rng);
  ProductC p = product_c(gens, w);
  double ratio = p.lognorm() / (100.0 * std::log(100.0));
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
}

TEST_CASE("enumeration oracle") {
  MeasureSpec s = schrodinger();
  auto words2 = enumerate_mu_n(s, 2);
  CHECK(words2.size() == 4);
  Rat total(0);
  for (auto& [w, p] : words2) {
    CHECK(p == Rat(1, 4));
    total += p;
  }
  CHECK(total == 1);

  auto words0 = enumerate_mu_n(s, 0);
  CHECK(words0.size() == 1);
  CHECK(words0[0].first.empty());
  CHECK(words0[0].second == 1);

  CHECK_THROWS_AS(enumerate_mu_n(s, 30), CapExceeded);
}

TEST_CASE("subadditivity of the exact means") {
  MeasureSpec s = diag_pair();
  std::vector<Rat> a(7, Rat(0));
  for (long n = 1; n <= 6; ++n) {
    Rat acc(0);
    for (auto& [w, p] : enumerate_mu_n(s, n)) acc += p * lognorm(product_na(s, w));
    a[static_cast<std::size_t>(n)] = acc;
  }
  for (long m = 1; m <= 5; ++m)
    for (long n = 1; m + n <= 6; ++n)
      CHECK(a[static_cast<std::size_t>(m + n)] <= a[static_cast<std::size_t>(m)] + a[static_cast<std::size_t>(n)]);
}

TEST_CASE("reversal symmetry of the lognorm distribution") {
  MeasureSpec s = diag_pair();
  MeasureSpec si = s.inverted();
  for (long n : {1L, 2L, 3L, 4L}) {
    std::map<Rat, Rat> dist, dist_rev;
    for (auto& [w, p] : enumerate_mu_n(s, n)) {
      dist[lognorm(product_na(s, w))] += p;
      dist_rev[lognorm(product_na(si, w))] += p;
    }
    CHECK(dist == dist_rev);
  }
}

TEST_CASE("parallel merge is deterministic") {
  std::vector<double> a(64), b(64);
  parallel_samples(64, 5, 1, [&](long i, SplitMix64& rng) { a[static_cast<std::size_t>(i)] = rng.next_double(); });
  parallel_samples(64, 5, 8, [&](long i, SplitMix64& rng) { b[static_cast<std::size_t>(i)] = rng.next_double(); });
  CHECK(a == b);
}

}  // TEST_SUITE
