#include "lyapna/sl2c.hpp"

#include <algorithm>
#include <cmath>

#include "lyapna/errors.hpp"

namespace lyapna {

void P1C::normalize() {
  double n = std::max(std::abs(x), std::abs(y));
  if (n == 0.0) throw ZeroDivision("[0 : 0] is not a point of P^1");
  x /= n;
  y /= n;
}

MatC specialize(const MatNA& m, cplx t0) {
  MatC out{m.a.evaluate(t0), m.b.evaluate(t0), m.c.evaluate(t0), m.d.evaluate(t0)};
  // det = ad - bc cancels at the scale of the squared entry norm, so the
  // drift test is relative to that scale.
  double scale = std::exp(2.0 * lognorm_c(out));
  if (std::abs(out.det() - cplx(1.0, 0.0)) > 1e-6 * std::max(1.0, scale))
    throw DetDrift("specialized determinant drifted from 1");
  return out;
}

double lognorm_c(const MatC& m) {
  double n = std::max(std::max(std::abs(m.a), std::abs(m.b)),
                      std::max(std::abs(m.c), std::abs(m.d)));
  return std::log(n);
}

double sigma_c(const MatC& m, const P1C& v) {
  return std::log(std::max(std::abs(m.a * v.x + m.b * v.y), std::abs(m.c * v.x + m.d * v.y)));
}

P1C mobius_apply(const MatC& m, const P1C& z) {
  return P1C(m.a * z.x + m.b * z.y, m.c * z.x + m.d * z.y);
}

std::pair<cplx, cplx> eigenvalues(const MatC& m) {
  cplx tr = m.trace();
  cplx disc = tr * tr - 4.0 * m.det();
  cplx sq = std::sqrt(disc);
  // Pick the sign that avoids cancellation in tr +- sq.
  cplx big = (std::abs(tr + sq) >= std::abs(tr - sq)) ? (tr + sq) / 2.0 : (tr - sq) / 2.0;
  if (big == cplx(0.0, 0.0)) return {sq / 2.0, -sq / 2.0};
  cplx small = m.det() / big;
  if (std::abs(small) > std::abs(big)) std::swap(big, small);
  return {big, small};
}

ClassC classify_c(const MatC& m, double tol) {
  auto [big, small] = eigenvalues(m);
  if (std::abs(std::abs(big) - 1.0) > tol && std::abs(std::abs(small) - 1.0) > tol)
    return ClassC::Loxodromic;
  return ClassC::NonLoxodromic;
}

P1C dominant_eigenvector(const MatC& m) {
  cplx lambda = eigenvalues(m).first;
  // Eigenvector rows of (m - lambda): pick the numerically larger candidate.
  cplx v1x = m.b, v1y = lambda - m.a;
  cplx v2x = lambda - m.d, v2y = m.c;
  double n1 = std::max(std::abs(v1x), std::abs(v1y));
  double n2 = std::max(std::abs(v2x), std::abs(v2y));
  return n1 >= n2 ? P1C(v1x, v1y) : P1C(v2x, v2y);
}

P1C attracting_fixed_point_c(const MatC& m, double tol) {
  if (classify_c(m, tol) != ClassC::Loxodromic)
    throw NotLoxodromic("attracting fixed point of a non-loxodromic element");
  return dominant_eigenvector(m);
}

}  // namespace lyapna
