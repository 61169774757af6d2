#pragma once

#include <complex>
#include <utility>

#include "lyapna/sl2na.hpp"

namespace lyapna {

using cplx = std::complex<double>;

// Complex point of P^1 normalized to max(|x|, |y|) = 1.
struct P1C {
  cplx x, y;
  P1C() : x(1.0, 0.0), y(1.0, 0.0) { normalize(); }
  P1C(cplx x0, cplx y0) : x(x0), y(y0) { normalize(); }
  static P1C infinity() { return P1C(cplx(1, 0), cplx(0, 0)); }
  static P1C from_affine(cplx z) { return P1C(z, cplx(1, 0)); }
  void normalize();
  bool is_infinity() const { return y == cplx(0.0, 0.0); }
  cplx affine() const { return x / y; }
  // Chordal distance |x1 y2 - x2 y1| of normalized representatives.
  friend double dist(const P1C& u, const P1C& v) { return std::abs(u.x * v.y - v.x * u.y); }
};

struct MatC {
  cplx a, b, c, d;
  static MatC identity() { return {1.0, 0.0, 0.0, 1.0}; }
  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  MatC inverse() const { return {d, -b, -c, a}; }
  friend MatC operator*(const MatC& x, const MatC& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

// Entrywise evaluation of an exact matrix family at t0 != 0.  DetDrift when
// the evaluated determinant strays from 1 beyond 1e-6.
MatC specialize(const MatNA& m, cplx t0);

double lognorm_c(const MatC& m);
double sigma_c(const MatC& m, const P1C& v);

P1C mobius_apply(const MatC& m, const P1C& z);

enum class ClassC { Loxodromic, NonLoxodromic };
// Loxodromic iff the eigenvalue moduli differ from 1 by more than tol.
ClassC classify_c(const MatC& m, double tol = 1e-6);

// Eigenvalues ordered by modulus, |big| >= |small|; stable quadratic branch.
std::pair<cplx, cplx> eigenvalues(const MatC& m);

// Eigenvector of the larger-modulus eigenvalue, without the loxodromy gate.
// For a rescaled product this is still the attracting direction of the true
// product, even when its determinant has underflowed.
P1C dominant_eigenvector(const MatC& m);

P1C attracting_fixed_point_c(const MatC& m, double tol = 1e-6);

}  // namespace lyapna
