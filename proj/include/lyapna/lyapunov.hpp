#pragma once

#include <vector>

#include "lyapna/classify.hpp"
#include "lyapna/walks.hpp"

namespace lyapna {

// Working relative-precision window for long matrix-product walks.  Certified
// leading orders do not depend on it; it only bounds coefficient growth (deep
// cancellations raise PrecisionExhausted instead of degrading results).
inline constexpr long kWalkBudget = 32;

struct EstimatorParams {
  long n = 400;
  long samples = 50;
  uint64_t seed = 0;
  unsigned threads = 1;
  long budget = kWalkBudget;
};

// Kingman estimator of chi_na in valuation units: mean over samples of
// lognorm(r_n)/n.
Estimate chi_na_kingman(const MeasureSpec& spec, const EstimatorParams& p);

// Exact finite-n upper approximant a_n/n via the enumeration oracle.
Rat chi_na_exact(const MeasureSpec& spec, long n, long cap = 1000000);

// Complex-side estimator of chi(t): mean of (acc_log + lognorm_c)/n.
Estimate chi_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p);

struct TraceEstimate {
  Estimate estimate;
  double hyperbolic_fraction = 0.0;
  long n_hyperbolic = 0;
};

// Trace estimator: mean of (1/n) log|tr r_n| over hyperbolic/loxodromic
// samples; TooFewHyperbolic when they are less than half.
TraceEstimate chi_trace_na(const MeasureSpec& spec, const EstimatorParams& p);
TraceEstimate chi_trace_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p);

// Furstenberg-formula estimator: v sampled as the attracting fixed point of
// r_{n_mix}; the inner expectation over the finitely supported measure is the
// exact weighted sum over generators.  Valuation units on the na side, raw
// log units (like chi_c) on the complex side.
TraceEstimate furstenberg_na(const MeasureSpec& spec, const EstimatorParams& p);
TraceEstimate furstenberg_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p);

// chi_na by the GroupClass dispatch: closed forms for the affine and
// {0,infinity} cases, Kingman otherwise.  `method` reports which route ran.
struct ChiNaResult {
  double value = 0.0;
  double stderror = 0.0;
  bool exact = false;
  Rat exact_value;  // when exact
  std::string method;
  GroupClass group;
};
ChiNaResult chi_na_dispatch(const MeasureSpec& spec, const EstimatorParams& p, long max_len = 6);

struct SweepRow {
  double t = 0.0;
  double chi = 0.0;
  double chi_stderr = 0.0;
  double chi_ratio = 0.0;
  double chi_na = 0.0;
  double abs_error = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  ChiNaResult chi_na;
  bool monotone_improvement = false;
};

// One row per t: chi(t), chi(t)/log(1/|t|), chi_na, |ratio - chi_na|; the
// monotone flag records whether the error is non-increasing along the grid.
SweepResult sweep(const MeasureSpec& spec, const std::vector<double>& t_list,
                  const EstimatorParams& complex_params, const EstimatorParams& na_params,
                  long max_len = 6);

}  // namespace lyapna
