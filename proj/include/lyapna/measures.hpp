#pragma once

#include <optional>
#include <vector>

#include "lyapna/lyapunov.hpp"

namespace lyapna {

// A model, represented by its finite set of marked type-2 points; the Gauss
// point is always included.
struct ModelSpec {
  std::vector<BallNA> marked;
  static ModelSpec trivial() { return ModelSpec{{BallNA::gauss()}}; }
  // max over marked points of dhyp(point, Gauss): words above this norm act
  // as north-south maps on the components.
  Rat dhyp_bound() const;
};

struct P1SampleNA {
  std::vector<P1NA> points;  // attracting fixed points of hyperbolic samples
  long n_excluded = 0;
  long n_steps = 0;
  long n_requested = 0;
  uint64_t seed = 0;
  bool reversed = false;
};

struct P1SampleC {
  std::vector<P1C> points;
  long n_excluded = 0;
  long n_steps = 0;
  long n_requested = 0;
  uint64_t seed = 0;
  cplx t0;
  bool reversed = false;
};

// Attracting fixed points of r_n per sample; `reversed` samples the
// backward measure using the inverted generators.  TooFewHyperbolic when
// less than half of the samples classify hyperbolic/loxodromic.
P1SampleNA sample_stationary_na(const MeasureSpec& spec, const EstimatorParams& p,
                                bool reversed = false);
P1SampleC sample_stationary_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p,
                              bool reversed = false);

// True iff the two type-1 points select the same branch at every marked
// point of the model: both outside the closed ball, or both inside the same
// open residue ball.
bool same_component(const P1NA& z1, const P1NA& z2, const ModelSpec& model);

// Residue of a type-1 point on the trivial model: the constant term in
// P^1(C), or infinity when the point has negative order.
P1C residue_of(const P1NA& z, long budget = Series::kDefaultBudget);

struct EmpiricalMeasure {
  struct Atom {
    std::size_t rep_index;  // representative sample index
    long count = 0;
    double mass = 0.0;
  };
  std::vector<Atom> atoms;
  double deficit = 0.0;  // excluded-sample mass
};

// Partition the sample by same_component; masses are counts over the
// requested sample size, so excluded samples appear as a deficit.
EmpiricalMeasure residual_measure(const P1SampleNA& sample, const ModelSpec& model);

struct CompareReport {
  struct Row {
    cplx na_residue;  // representative residue (or evaluation) of the atom
    bool na_residue_infinite = false;
    double mass_na = 0.0;
    double mass_c = 0.0;
  };
  std::vector<Row> rows;
  double tv = 0.0;
  long matched_atoms = 0;
  double unmatched_complex_mass = 0.0;
  double na_deficit = 0.0;
  double c_deficit = 0.0;
};

// Theorem-B comparison on the trivial model: cluster the complex sample at
// radius cluster_tol (chordal metric), match clusters to the na-side atoms
// by proximity of the residues, and report the total-variation distance of
// the matched mass vectors.  cluster_tol <= 0 picks |t0|^(1/2).
// UnmatchedMass when more than 20% of the complex mass finds no atom.
CompareReport compare_residual(const MeasureSpec& spec, const ModelSpec& model, cplx t0,
                               const EstimatorParams& p, double cluster_tol = -1.0);

}  // namespace lyapna
