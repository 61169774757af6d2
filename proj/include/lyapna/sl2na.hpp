#pragma once

#include <utility>

#include "lyapna/series.hpp"

namespace lyapna {

// 2x2 matrix over C((t))-series with determinant 1 (exactly when the entries
// are exact, up to the working precision otherwise).
struct MatNA {
  Series a, b, c, d;

  static MatNA identity();
  MatNA inverse() const { return {d, -b, -c, a}; }
  Series det() const { return a * d - b * c; }
  Series trace() const { return a + d; }
  friend MatNA operator*(const MatNA& x, const MatNA& y);
  bool is_integral() const;  // all entry orders >= 0 (certified)
  MatNA truncate_rel(long terms) const;
  std::string to_string() const;
};

// log of the t-adic matrix norm: -min over entries of ord(entry).
// Nonnegative for det-1 matrices.  PrecisionExhausted when the minimum
// cannot be certified against a zero-like entry.
Rat lognorm(const MatNA& m);

enum class ClassNA { Identity, Hyperbolic, Parabolic, StrictlyElliptic };
const char* to_string(ClassNA c);

// Element classification: hyperbolic iff ord(tr) < 0; parabolic iff
// tr^2 = 4 exactly; +-identity reported separately.
ClassNA classify(const MatNA& m);

// Point of P^1 over the series field, normalized so that
// min(ord x, ord y) = 0; infinity is [1 : 0].
class P1NA {
 public:
  P1NA() : x_(Series::one()), y_(Series::one()) {}
  P1NA(Series x, Series y);  // normalizes
  static P1NA infinity();
  static P1NA zero_point();
  static P1NA from_affine(const Series& z) { return P1NA(z, Series::one()); }

  const Series& x() const { return x_; }
  const Series& y() const { return y_; }
  bool is_infinity() const { return y_.is_exact_zero(); }
  // Projective equality up to precision: x1*y2 - x2*y1 indistinguishable
  // from 0.
  friend bool operator==(const P1NA& u, const P1NA& v);
  friend bool operator!=(const P1NA& u, const P1NA& v) { return !(u == v); }
  std::string to_string() const;

 private:
  Series x_, y_;
};

P1NA mobius_apply(const MatNA& m, const P1NA& z);

// sigma(m, v) = log(|m V| / |V|) in valuation units for the normalized
// representative V of v.
Rat sigma_na(const MatNA& m, const P1NA& v);

// -log of the spherical distance of normalized representatives; +inf iff the
// points agree (up to precision).
Ord dsph_na(const P1NA& z1, const P1NA& z2);

// KAK decomposition m * a * n with m, n integral of det 1 and
// a = diag(lambda, 1/lambda), log|lambda| = lognorm.  Computed by Smith-style
// pivoting over the valuation ring with signed swaps.
struct Kak {
  MatNA m, a, n;
};
Kak kak(const MatNA& g, long budget = Series::kDefaultBudget);

// Attracting and repelling fixed points in P^1 of a hyperbolic element.
std::pair<P1NA, P1NA> fixed_points(const MatNA& m, long budget = Series::kDefaultBudget);

// Closed ball region of P^1: {ord(z - center) >= radius_order} in the z
// chart, or the same inequality in the w = 1/z chart when flipped (such
// balls may contain infinity).  Its boundary is the type-2 point
// x_{B(a, e^-r)}; `boundary_center/boundary_radius_order` give that point
// canonically in the z chart (the Gauss point is center 0, r = 0).
class BallNA {
 public:
  BallNA(Series center, Rat radius_order, bool flipped = false);
  // Spherical ball of radius e^-r around a point of P^1 (r > 0, or r = 0 for
  // the unit ball around a point of the closed unit disk).
  static BallNA spherical(const P1NA& center, const Rat& radius_order,
                          long budget = Series::kDefaultBudget);
  static BallNA gauss() { return BallNA(Series(), Rat(0)); }

  const Series& center() const { return center_; }
  const Rat& radius_order() const { return r_; }
  bool flipped() const { return flipped_; }

  bool contains(const P1NA& z) const;

  // Canonical type-2 point attached to the ball, in the z chart.
  const Series& boundary_center() const { return bcenter_; }
  const Rat& boundary_radius_order() const { return br_; }

  std::string to_string() const;

 private:
  Series center_;
  Rat r_;
  bool flipped_;
  Series bcenter_;  // canonical z-chart form of the boundary point
  Rat br_;
};

// Hyperbolic (tree) distance between the type-2 points attached to two
// balls, via the join: d = (r1 - rj) + (r2 - rj) with rj = min(r1, r2,
// ord(a1 - a2)).
Rat dhyp(const BallNA& x, const BallNA& y);

// B_att / B_rep of spherical radius exp(-lognorm) from the KAK factors:
// B_rep = n^{-1}(ball at 0), B_att = m(ball at infinity).  NormOne when
// lognorm = 0.
std::pair<BallNA, BallNA> att_rep_balls(const MatNA& g, long budget = Series::kDefaultBudget);

}  // namespace lyapna
