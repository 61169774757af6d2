#include "lyapna/hybrid.hpp"

#include <cmath>

#include "lyapna/errors.hpp"

namespace lyapna {

double hybrid_seminorm(const Series& f, cplx t) {
  if (!f.is_exact()) throw InexactSeries("hybrid seminorm requires an exact series");
  if (t == cplx(0.0, 0.0)) {
    Ord o = f.ord();
    if (o.is_pos_inf()) return 0.0;
    return std::exp(-o.q().get_d());
  }
  if (std::abs(t) > kHybridRadius + 1e-15)
    throw Error("InvalidArgument", "hybrid seminorm needs |t| <= 1/e");
  double val = std::abs(f.evaluate(t));
  if (val == 0.0) return 0.0;
  return std::pow(val, -1.0 / std::log(std::abs(t)));
}

HybridPoint HybridPoint::arch(cplx t, P1C z) {
  if (t == cplx(0.0, 0.0) || std::abs(t) > kHybridRadius + 1e-15)
    throw Error("InvalidArgument", "Archimedean hybrid points need 0 < |t| <= 1/e");
  HybridPoint p;
  p.arch_ = true;
  p.t_ = t;
  p.z_ = z;
  return p;
}

HybridPoint HybridPoint::na(P1NA v) {
  HybridPoint p;
  p.arch_ = false;
  p.v_ = std::move(v);
  return p;
}

double sigma_hyb(const MatNA& g, const HybridPoint& p) {
  if (p.is_arch()) {
    MatC gt = specialize(g, p.t());
    return sigma_c(gt, p.z()) / std::log(1.0 / std::abs(p.t()));
  }
  return sigma_na(g, p.v()).get_d();
}

std::vector<ContinuityRow> continuity_check(const MatNA& g, const P1NA& v,
                                            const std::vector<double>& t_grid) {
  double s_na = sigma_na(g, v).get_d();
  std::vector<ContinuityRow> rows;
  for (double t : t_grid) {
    P1C zt(v.x().evaluate_known(t), v.y().evaluate_known(t));
    double s_arch = sigma_hyb(g, HybridPoint::arch(t, zt));
    rows.push_back({t, s_arch, s_na, std::abs(s_arch - s_na)});
  }
  return rows;
}

P1NA random_balanced_point(SplitMix64& rng, int max_extra_terms) {
  auto coords = [&] {
    std::vector<GRat> cs(static_cast<std::size_t>(max_extra_terms) + 1);
    cs[0] = GRat(1);
    for (int k = 1; k <= max_extra_terms; ++k) {
      long pick = static_cast<long>(rng.next() % 3) - 1;
      cs[static_cast<std::size_t>(k)] = GRat(pick);
    }
    return Series::from_coeffs(1, 0, std::move(cs), Series::kInfPrec);
  };
  return P1NA(coords(), coords());
}

}  // namespace lyapna
