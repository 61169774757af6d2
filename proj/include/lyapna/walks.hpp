#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lyapna/prng.hpp"
#include "lyapna/sl2c.hpp"
#include "lyapna/sl2na.hpp"

namespace lyapna {

// Finitely supported probability measure on exact generator matrices.
struct MeasureSpec {
  struct Generator {
    std::string name;
    MatNA mat;
    Rat weight;
  };
  std::vector<Generator> gens;
  bool symmetric = false;

  std::size_t size() const { return gens.size(); }
  // Same support with every generator replaced by its inverse.
  MeasureSpec inverted() const;
  // Exact specialization cache for one complex parameter.
  std::vector<MatC> specialize_all(cplx t0) const;
};

using Word = std::vector<uint32_t>;

struct Estimate {
  double value = 0.0;
  double stderror = 0.0;
  long n_steps = 0;
  long n_samples = 0;
  uint64_t seed = 0;
};

// One generator index with the spec's exact weights.  Sampling is exact when
// the common weight denominator fits in 64 bits (always, in practice);
// otherwise a 64-bit uniform fraction is compared against the exact
// cumulative weights, a bias below 2^-63.
class IndexSampler {
 public:
  explicit IndexSampler(const MeasureSpec& spec);
  uint32_t sample(SplitMix64& rng) const;

 private:
  std::vector<mpz_class> cum_num_;  // cumulative numerators over denom_
  mpz_class denom_;
  bool exact_ = false;
  uint64_t denom_u64_ = 0;
  std::vector<uint64_t> cum_u64_;
};

// i.i.d. word of length n from the stream for (seed, sample index).
Word sample_word(const MeasureSpec& spec, long n, SplitMix64& rng);

// Right product r_n = g_{w_1} ... g_{w_n}, exact.
MatNA product_na(const MeasureSpec& spec, const Word& w);
// Left product l_n = g_{w_n} ... g_{w_1}, exact.
MatNA left_product_na(const MeasureSpec& spec, const Word& w);
// Same products with the running matrix truncated to a relative precision
// window.  Certified leading orders (hence lognorm, sigma, traces) are
// unchanged by the truncation; deep cancellations surface as
// PrecisionExhausted instead of silently wrong values.
MatNA product_na(const MeasureSpec& spec, const Word& w, long rel_budget);
MatNA left_product_na(const MeasureSpec& spec, const Word& w, long rel_budget);

// Complex-side product with per-step renormalization: the true product is
// exp(acc_log) * mat, with max entry modulus of mat equal to 1.
struct ProductC {
  MatC mat;
  double acc_log = 0.0;
  double lognorm() const { return acc_log + lognorm_c(mat); }
  // log |tr| of the true (unscaled) product.
  double log_abs_trace() const;
};
ProductC product_c(const std::vector<MatC>& gens, const Word& w);
ProductC product_c(const MeasureSpec& spec, const Word& w, cplx t0);

// Loxodromy of the true det-1 product behind a ProductC.  The rescaled
// matrix has determinant exp(-2 acc_log), so its own eigenvalue moduli say
// nothing; the test reconstructs the trace at the true scale instead.
ClassC classify_product_c(const ProductC& p, double tol = 1e-6);

// All |support|^n words with exact probabilities (the n-th convolution
// power).  CapExceeded when |support|^n > cap.
std::vector<std::pair<Word, Rat>> enumerate_mu_n(const MeasureSpec& spec, long n,
                                                 long cap = 1000000);

// Deterministic sample-parallel map: out[i] = fn(i, stream_for(seed, i)),
// merged in index order regardless of the thread count.
void parallel_samples(long n_samples, uint64_t seed, unsigned threads,
                      const std::function<void(long, SplitMix64&)>& fn);

// Mean / standard error over per-sample values, accumulated in index order.
Estimate summarize(const std::vector<double>& values, long n_steps, uint64_t seed);

unsigned default_threads();

// Run a per-sample computation at the given relative budget, escalating to a
// 4x window and finally to exact arithmetic when a certified answer needs
// more precision.  fn receives 0 for "exact".
template <typename F>
auto with_budget_escalation(long budget, F&& fn) {
  if (budget > 0) {
    try {
      return fn(budget);
    } catch (const PrecisionExhausted&) {
    }
    try {
      return fn(4 * budget);
    } catch (const PrecisionExhausted&) {
    }
  }
  return fn(0L);
}

}  // namespace lyapna
