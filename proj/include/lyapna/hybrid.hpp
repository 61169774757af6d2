#pragma once

#include <vector>

#include "lyapna/prng.hpp"
#include "lyapna/sl2c.hpp"

namespace lyapna {

// Base disk radius of the hybrid space.
inline constexpr double kHybridRadius = 0.36787944117144233;  // 1/e

// |f(t)|^(-1/log|t|) for 0 < |t| <= 1/e; at t = 0 the degenerate value
// exp(-ord f).  f must be exact.
double hybrid_seminorm(const Series& f, cplx t);

// A point of the hybrid projective line: an Archimedean fiber point (t, z)
// with 0 < |t| <= 1/e, or a non-Archimedean point of P^1 over the series
// field.
class HybridPoint {
 public:
  static HybridPoint arch(cplx t, P1C z);
  static HybridPoint na(P1NA v);
  bool is_arch() const { return arch_; }
  cplx t() const { return t_; }
  const P1C& z() const { return z_; }
  const P1NA& v() const { return v_; }

 private:
  HybridPoint() = default;
  bool arch_ = false;
  cplx t_;
  P1C z_{};
  P1NA v_{};
};

// The hybrid cocycle: sigma_c(g_t, z)/log|t|^{-1} on Archimedean fibers,
// sigma_na(g, v) over the central fiber.
double sigma_hyb(const MatNA& g, const HybridPoint& p);

struct ContinuityRow {
  double t = 0.0;
  double sigma_arch = 0.0;
  double sigma_na = 0.0;
  double deviation = 0.0;
};

// Follow the curve (t, v(t)) down to the central fiber: deviation(t) =
// |sigma_hyb(g, (t, v(t))) - sigma_hyb(g, v)|.
std::vector<ContinuityRow> continuity_check(const MatNA& g, const P1NA& v,
                                            const std::vector<double>& t_grid);

// Well-conditioned random type-1 points for continuity experiments: both
// coordinates are 1 + (terms with coefficients in {-1, 0, 1}), so the
// deviation constants stay small.
P1NA random_balanced_point(SplitMix64& rng, int max_extra_terms = 5);

}  // namespace lyapna
