#include "lyapna/measures.hpp"

#include <algorithm>
#include <cmath>

#include "lyapna/errors.hpp"

namespace lyapna {

Rat ModelSpec::dhyp_bound() const {
  Rat bound(0);
  BallNA gauss = BallNA::gauss();
  for (const auto& b : marked) bound = std::max(bound, dhyp(b, gauss));
  return bound;
}

P1SampleNA sample_stationary_na(const MeasureSpec& spec, const EstimatorParams& p,
                                bool reversed) {
  const MeasureSpec walk = reversed ? spec.inverted() : spec;
  std::vector<std::optional<P1NA>> slots(static_cast<std::size_t>(p.samples));
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(walk, p.n, rng);
    with_budget_escalation(p.budget, [&](long b) {
      MatNA r = product_na(walk, w, b);
      if (classify(r) != ClassNA::Hyperbolic) return 0;
      slots[static_cast<std::size_t>(i)] = fixed_points(r, b > 0 ? b : Series::kDefaultBudget).first;
      return 0;
    });
  });
  P1SampleNA out;
  out.n_steps = p.n;
  out.n_requested = p.samples;
  out.seed = p.seed;
  out.reversed = reversed;
  for (auto& s : slots)
    if (s)
      out.points.push_back(std::move(*s));
    else
      ++out.n_excluded;
  if (2 * static_cast<long>(out.points.size()) < p.samples)
    throw TooFewHyperbolic("stationary sample: fewer than half the walks are hyperbolic");
  return out;
}

P1SampleC sample_stationary_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p,
                              bool reversed) {
  const MeasureSpec walk = reversed ? spec.inverted() : spec;
  auto gens = walk.specialize_all(t0);
  std::vector<std::optional<P1C>> slots(static_cast<std::size_t>(p.samples));
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(walk, p.n, rng);
    ProductC r = product_c(gens, w);
    if (classify_product_c(r) != ClassC::Loxodromic) return;
    slots[static_cast<std::size_t>(i)] = dominant_eigenvector(r.mat);
  });
  P1SampleC out;
  out.n_steps = p.n;
  out.n_requested = p.samples;
  out.seed = p.seed;
  out.t0 = t0;
  out.reversed = reversed;
  for (auto& s : slots)
    if (s)
      out.points.push_back(*s);
    else
      ++out.n_excluded;
  if (2 * static_cast<long>(out.points.size()) < p.samples)
    throw TooFewHyperbolic("stationary sample: fewer than half the walks are loxodromic");
  return out;
}

namespace {

// ord(z1 - z2) > r, projectively: ord(x1 y2 - x2 y1) - ord(y1) - ord(y2) > r.
bool same_residue_ball(const P1NA& z1, const P1NA& z2, const Rat& r) {
  Series cross = z1.x() * z2.y() - z2.x() * z1.y();
  if (cross.is_exact_zero()) return true;
  if (!z1.y().has_terms() || !z2.y().has_terms())
    throw PrecisionExhausted("residue-ball test with unresolved denominator");
  Rat denom_ord = z1.y().ord().q() + z2.y().ord().q();
  if (cross.is_zero_like()) {
    if (cross.ord_lower_bound().q() - denom_ord > r) return true;
    throw PrecisionExhausted("residue-ball test unresolved at the working precision");
  }
  return cross.ord().q() - denom_ord > r;
}

}  // namespace

bool same_component(const P1NA& z1, const P1NA& z2, const ModelSpec& model) {
  for (const BallNA& mark : model.marked) {
    BallNA region(mark.boundary_center(), mark.boundary_radius_order(), false);
    bool in1 = region.contains(z1);
    bool in2 = region.contains(z2);
    if (in1 != in2) return false;
    if (in1 && !same_residue_ball(z1, z2, mark.boundary_radius_order())) return false;
  }
  return true;
}

P1C residue_of(const P1NA& z, long budget) {
  if (z.is_infinity()) return P1C::infinity();
  if (!z.y().has_terms()) {
    // normalized with ord(x) = 0 and ord(y) bounded below by a positive
    // amount: the point has negative order
    if (z.y().ord_lower_bound() > Ord(Rat(0))) return P1C::infinity();
    throw PrecisionExhausted("residue: coordinate order unresolved");
  }
  Series w = z.x() * z.y().inv(budget);
  if (w.is_zero_like()) {
    if (w.is_exact_zero() || w.ord_lower_bound() > Ord(Rat(0))) return P1C::from_affine(0.0);
    throw PrecisionExhausted("residue unresolved");
  }
  Ord o = w.ord();
  if (o > Ord(Rat(0))) return P1C::from_affine(0.0);
  if (o < Ord(Rat(0))) return P1C::infinity();
  return P1C::from_affine(w.leading().to_complex());
}

EmpiricalMeasure residual_measure(const P1SampleNA& sample, const ModelSpec& model) {
  EmpiricalMeasure out;
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    bool placed = false;
    for (auto& atom : out.atoms) {
      if (same_component(sample.points[i], sample.points[atom.rep_index], model)) {
        ++atom.count;
        placed = true;
        break;
      }
    }
    if (!placed) out.atoms.push_back({i, 1, 0.0});
  }
  double total = static_cast<double>(std::max<long>(sample.n_requested, 1));
  for (auto& atom : out.atoms) atom.mass = static_cast<double>(atom.count) / total;
  out.deficit = static_cast<double>(sample.n_excluded) / total;
  return out;
}

namespace {

struct Cluster {
  P1C rep;
  long count = 0;
};

// Deterministic representative clustering of the complex sample.
std::vector<Cluster> cluster_complex(const std::vector<P1C>& pts, const ModelSpec& model,
                                     cplx t0, double tol, bool trivial_model) {
  const double margin = 0.25;
  std::vector<Cluster> clusters;
  // Precompute marked-point data for the general branch logic.
  struct Mark {
    cplx center;
    double inside_radius;
    double residue_radius;
  };
  std::vector<Mark> marks;
  if (!trivial_model) {
    for (const BallNA& b : model.marked) {
      double r = b.boundary_radius_order().get_d();
      marks.push_back({b.boundary_center().evaluate_known(t0), std::pow(std::abs(t0), r),
                       std::pow(std::abs(t0), r + margin)});
    }
  }
  auto same_cluster = [&](const P1C& a, const P1C& b) {
    if (trivial_model) return dist(a, b) <= tol;
    for (const Mark& m : marks) {
      bool ina = !a.is_infinity() && std::abs(a.affine() - m.center) <= m.inside_radius;
      bool inb = !b.is_infinity() && std::abs(b.affine() - m.center) <= m.inside_radius;
      if (ina != inb) return false;
      if (ina && std::abs(a.affine() - b.affine()) > m.residue_radius) return false;
    }
    return true;
  };
  for (const P1C& z : pts) {
    bool placed = false;
    for (auto& c : clusters)
      if (same_cluster(z, c.rep)) {
        ++c.count;
        placed = true;
        break;
      }
    if (!placed) clusters.push_back({z, 1});
  }
  return clusters;
}

}  // namespace

CompareReport compare_residual(const MeasureSpec& spec, const ModelSpec& model, cplx t0,
                               const EstimatorParams& p, double cluster_tol) {
  const bool trivial_model =
      model.marked.size() == 1 && model.marked[0].boundary_radius_order() == 0;
  double tol = cluster_tol > 0 ? cluster_tol : std::sqrt(std::abs(t0));

  P1SampleNA na = sample_stationary_na(spec, p);
  EmpiricalMeasure em = residual_measure(na, model);
  P1SampleC cs = sample_stationary_c(spec, t0, p);

  CompareReport report;
  report.na_deficit = em.deficit;
  report.c_deficit =
      static_cast<double>(cs.n_excluded) / static_cast<double>(std::max<long>(cs.n_requested, 1));

  std::vector<P1C> labels;
  for (const auto& atom : em.atoms) {
    const P1NA& rep = na.points[atom.rep_index];
    if (trivial_model) {
      labels.push_back(residue_of(rep, p.budget));
    } else {
      labels.push_back(P1C(rep.x().evaluate_known(t0), rep.y().evaluate_known(t0)));
    }
    report.rows.push_back({labels.back().is_infinity() ? cplx(0, 0) : labels.back().affine(),
                           labels.back().is_infinity(), atom.mass, 0.0});
  }

  auto clusters = cluster_complex(cs.points, model, t0, tol, trivial_model);
  double total_c = static_cast<double>(std::max<long>(cs.n_requested, 1));
  for (const Cluster& c : clusters) {
    double mass = static_cast<double>(c.count) / total_c;
    double best = 2.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      double d = dist(c.rep, labels[i]);
      if (d < best) {
        best = d;
        best_idx = i;
      }
    }
    if (!labels.empty() && best <= tol)
      report.rows[best_idx].mass_c += mass;
    else
      report.unmatched_complex_mass += mass;
  }

  double complex_mass = static_cast<double>(cs.points.size()) / total_c;
  if (complex_mass > 0 && report.unmatched_complex_mass > 0.2 * complex_mass)
    throw UnmatchedMass("more than 20% of the complex mass matches no na-side atom");

  double acc = 0.0;
  for (const auto& row : report.rows) {
    acc += std::abs(row.mass_na - row.mass_c);
    if (row.mass_c > 0) ++report.matched_atoms;
  }
  report.tv = 0.5 * (acc + report.unmatched_complex_mass);
  return report;
}

}  // namespace lyapna
