#include "lyapna/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "lyapna/errors.hpp"

namespace lyapna {

Estimate chi_na_kingman(const MeasureSpec& spec, const EstimatorParams& p) {
  std::vector<double> vals(static_cast<std::size_t>(p.samples));
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(spec, p.n, rng);
    Rat ln = with_budget_escalation(
        p.budget, [&](long b) { return lognorm(product_na(spec, w, b)); });
    vals[static_cast<std::size_t>(i)] = ln.get_d() / static_cast<double>(p.n);
  });
  return summarize(vals, p.n, p.seed);
}

Rat chi_na_exact(const MeasureSpec& spec, long n, long cap) {
  Rat acc(0);
  for (const auto& [w, prob] : enumerate_mu_n(spec, n, cap))
    acc += prob * lognorm(product_na(spec, w));
  Rat out = acc / n;
  out.canonicalize();
  return out;
}

Estimate chi_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p) {
  auto gens = spec.specialize_all(t0);
  std::vector<double> vals(static_cast<std::size_t>(p.samples));
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(spec, p.n, rng);
    vals[static_cast<std::size_t>(i)] = product_c(gens, w).lognorm() / static_cast<double>(p.n);
  });
  return summarize(vals, p.n, p.seed);
}

namespace {

TraceEstimate finish_trace(std::vector<double>& vals, std::vector<char>& hyp,
                           const EstimatorParams& p) {
  std::vector<double> kept;
  kept.reserve(vals.size());
  long n_hyp = 0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (hyp[i]) {
      kept.push_back(vals[i]);
      ++n_hyp;
    }
  TraceEstimate out;
  out.n_hyperbolic = n_hyp;
  out.hyperbolic_fraction =
      static_cast<double>(n_hyp) / static_cast<double>(std::max<long>(p.samples, 1));
  if (2 * n_hyp < p.samples)
    throw TooFewHyperbolic("fewer than half of the samples are hyperbolic");
  out.estimate = summarize(kept, p.n, p.seed);
  return out;
}

}  // namespace

TraceEstimate chi_trace_na(const MeasureSpec& spec, const EstimatorParams& p) {
  std::vector<double> vals(static_cast<std::size_t>(p.samples), 0.0);
  std::vector<char> hyp(static_cast<std::size_t>(p.samples), 0);
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(spec, p.n, rng);
    with_budget_escalation(p.budget, [&](long b) {
      MatNA r = product_na(spec, w, b);
      if (classify(r) != ClassNA::Hyperbolic) return 0;
      hyp[static_cast<std::size_t>(i)] = 1;
      vals[static_cast<std::size_t>(i)] =
          -r.trace().ord().q().get_d() / static_cast<double>(p.n);
      return 0;
    });
  });
  return finish_trace(vals, hyp, p);
}

TraceEstimate chi_trace_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p) {
  auto gens = spec.specialize_all(t0);
  std::vector<double> vals(static_cast<std::size_t>(p.samples), 0.0);
  std::vector<char> hyp(static_cast<std::size_t>(p.samples), 0);
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(spec, p.n, rng);
    ProductC r = product_c(gens, w);
    if (classify_product_c(r, 1e-9) != ClassC::Loxodromic) return;
    hyp[static_cast<std::size_t>(i)] = 1;
    vals[static_cast<std::size_t>(i)] = r.log_abs_trace() / static_cast<double>(p.n);
  });
  return finish_trace(vals, hyp, p);
}

TraceEstimate furstenberg_na(const MeasureSpec& spec, const EstimatorParams& p) {
  std::vector<double> vals(static_cast<std::size_t>(p.samples), 0.0);
  std::vector<char> hyp(static_cast<std::size_t>(p.samples), 0);
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(spec, p.n, rng);
    with_budget_escalation(p.budget, [&](long b) {
      MatNA r = product_na(spec, w, b);
      if (classify(r) != ClassNA::Hyperbolic) return 0;
      P1NA v = fixed_points(r, b > 0 ? b : Series::kDefaultBudget).first;
      Rat acc(0);
      for (const auto& g : spec.gens) acc += g.weight * sigma_na(g.mat, v);
      hyp[static_cast<std::size_t>(i)] = 1;
      vals[static_cast<std::size_t>(i)] = acc.get_d();
      return 0;
    });
  });
  return finish_trace(vals, hyp, p);
}

TraceEstimate furstenberg_c(const MeasureSpec& spec, cplx t0, const EstimatorParams& p) {
  auto gens = spec.specialize_all(t0);
  std::vector<double> vals(static_cast<std::size_t>(p.samples), 0.0);
  std::vector<char> hyp(static_cast<std::size_t>(p.samples), 0);
  parallel_samples(p.samples, p.seed, p.threads, [&](long i, SplitMix64& rng) {
    Word w = sample_word(spec, p.n, rng);
    ProductC r = product_c(gens, w);
    if (classify_product_c(r, 1e-9) != ClassC::Loxodromic) return;
    hyp[static_cast<std::size_t>(i)] = 1;
    P1C v = dominant_eigenvector(r.mat);
    double acc = 0.0;
    for (std::size_t k = 0; k < gens.size(); ++k)
      acc += spec.gens[k].weight.get_d() * sigma_c(gens[k], v);
    vals[static_cast<std::size_t>(i)] = acc;
  });
  return finish_trace(vals, hyp, p);
}

ChiNaResult chi_na_dispatch(const MeasureSpec& spec, const EstimatorParams& p, long max_len) {
  ChiNaResult out;
  out.group = classify_group(spec, max_len, p.budget);
  auto kingman = [&](const char* method) {
    Estimate e = chi_na_kingman(spec, p);
    out.value = e.value;
    out.stderror = e.stderror;
    out.exact = false;
    out.method = method;
  };
  switch (out.group.tag) {
    case GroupClass::Tag::Affine: {
      out.exact_value = chi_na_affine(spec, *out.group.conjugator);
      out.value = out.exact_value.get_d();
      out.exact = true;
      out.method = "affine-closed-form";
      return out;
    }
    case GroupClass::Tag::ZeroInfty: {
      try {
        out.exact_value = chi_na_zero_infty(spec, *out.group.conjugator);
        out.method = "zero-infty-closed-form";
      } catch (const NoSwapElement&) {
        out.exact_value = chi_na_affine(spec, *out.group.conjugator);
        out.method = "affine-closed-form";
      }
      out.value = out.exact_value.get_d();
      out.exact = true;
      return out;
    }
    case GroupClass::Tag::NonElementaryCertified:
      kingman("kingman");
      return out;
    case GroupClass::Tag::GoodReductionSuspected:
      kingman("kingman-good-reduction-suspected");
      return out;
    default:
      kingman("kingman-undetermined");
      return out;
  }
}

SweepResult sweep(const MeasureSpec& spec, const std::vector<double>& t_list,
                  const EstimatorParams& complex_params, const EstimatorParams& na_params,
                  long max_len) {
  SweepResult out;
  out.chi_na = chi_na_dispatch(spec, na_params, max_len);
  for (double t : t_list) {
    EstimatorParams cp = complex_params;
    Estimate e = chi_c(spec, t, cp);
    SweepRow row;
    row.t = t;
    row.chi = e.value;
    row.chi_stderr = e.stderror;
    double loginv = std::log(1.0 / t);
    row.chi_ratio = e.value / loginv;
    row.chi_na = out.chi_na.value;
    row.abs_error = std::abs(row.chi_ratio - row.chi_na);
    out.rows.push_back(row);
  }
  out.monotone_improvement = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (out.rows[i].abs_error > out.rows[i - 1].abs_error + 1e-12)
      out.monotone_improvement = false;
  return out;
}

}  // namespace lyapna
