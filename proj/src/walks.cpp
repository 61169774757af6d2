#include "lyapna/walks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "lyapna/errors.hpp"

namespace lyapna {

MeasureSpec MeasureSpec::inverted() const {
  MeasureSpec out = *this;
  for (auto& g : out.gens) {
    g.mat = g.mat.inverse();
    g.name += "^-1";
  }
  return out;
}

std::vector<MatC> MeasureSpec::specialize_all(cplx t0) const {
  std::vector<MatC> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(specialize(g.mat, t0));
  return out;
}

IndexSampler::IndexSampler(const MeasureSpec& spec) {
  denom_ = 1;
  for (const auto& g : spec.gens) denom_ = lcm(denom_, g.weight.get_den());
  mpz_class acc = 0;
  for (const auto& g : spec.gens) {
    acc += g.weight.get_num() * (denom_ / g.weight.get_den());
    cum_num_.push_back(acc);
  }
  if (denom_.fits_ulong_p() || mpz_sizeinbase(denom_.get_mpz_t(), 2) <= 63) {
    exact_ = true;
    denom_u64_ = mpz_get_ui(denom_.get_mpz_t());
    for (const auto& c : cum_num_) cum_u64_.push_back(mpz_get_ui(c.get_mpz_t()));
  }
}

uint32_t IndexSampler::sample(SplitMix64& rng) const {
  if (exact_) {
    uint64_t r = rng.next_below(denom_u64_);
    for (std::size_t i = 0; i < cum_u64_.size(); ++i)
      if (r < cum_u64_[i]) return static_cast<uint32_t>(i);
    return static_cast<uint32_t>(cum_u64_.size() - 1);
  }
  // Fallback: compare u / 2^64 against exact cumulative weights.
  uint64_t u = rng.next();
  mpz_class lhs(mpz_class(u) * denom_);
  mpz_class two64 = mpz_class(1) << 64;
  for (std::size_t i = 0; i < cum_num_.size(); ++i)
    if (lhs < cum_num_[i] * two64) return static_cast<uint32_t>(i);
  return static_cast<uint32_t>(cum_num_.size() - 1);
}

Word sample_word(const MeasureSpec& spec, long n, SplitMix64& rng) {
  IndexSampler sampler(spec);
  Word w(static_cast<std::size_t>(n));
  for (auto& x : w) x = sampler.sample(rng);
  return w;
}

namespace {

MatNA fold_product(const MeasureSpec& spec, const Word& w, bool left, long rel_budget) {
  if (w.empty()) return MatNA::identity();
  auto at = [&](std::size_t i) -> const MatNA& {
    return spec.gens[w[left ? w.size() - 1 - i : i]].mat;
  };
  MatNA p = at(0);
  if (rel_budget > 0) p = p.truncate_rel(rel_budget);
  for (std::size_t i = 1; i < w.size(); ++i) {
    p = p * at(i);
    if (rel_budget > 0) p = p.truncate_rel(rel_budget);
  }
  return p;
}

}  // namespace

MatNA product_na(const MeasureSpec& spec, const Word& w) { return fold_product(spec, w, false, 0); }
MatNA left_product_na(const MeasureSpec& spec, const Word& w) {
  return fold_product(spec, w, true, 0);
}
MatNA product_na(const MeasureSpec& spec, const Word& w, long rel_budget) {
  return fold_product(spec, w, false, rel_budget);
}
MatNA left_product_na(const MeasureSpec& spec, const Word& w, long rel_budget) {
  return fold_product(spec, w, true, rel_budget);
}

ProductC product_c(const std::vector<MatC>& gens, const Word& w) {
  ProductC out{MatC::identity(), 0.0};
  for (uint32_t idx : w) {
    out.mat = out.mat * gens[idx];
    double s = std::exp(lognorm_c(out.mat));
    out.mat = {out.mat.a / s, out.mat.b / s, out.mat.c / s, out.mat.d / s};
    out.acc_log += std::log(s);
  }
  // det(mat) = det(true product) / s_total^2 = exp(-2 acc_log); check the
  // drift in log scale while that value sits above the float cancellation
  // noise of ad - bc (for strongly expanding products the computed det is
  // pure rounding noise and carries no signal).
  if (std::abs(out.acc_log) < 15.0) {
    double drift = std::abs(std::log(std::abs(out.mat.det())) + 2.0 * out.acc_log);
    double tol = 1e-9 * std::max<double>(static_cast<double>(w.size()), 1.0) *
                 std::max(1.0, std::abs(out.acc_log));
    if (drift > tol) throw DetDrift("complex product determinant drifted");
  }
  return out;
}

ProductC product_c(const MeasureSpec& spec, const Word& w, cplx t0) {
  return product_c(spec.specialize_all(t0), w);
}

double ProductC::log_abs_trace() const { return acc_log + std::log(std::abs(mat.trace())); }

ClassC classify_product_c(const ProductC& p, double tol) {
  double lt = p.log_abs_trace();
  // |tr| > 2 forces |lambda_big| > 1 for det-1 matrices (|l| + 1/|l| >= |tr|).
  if (lt > std::log(2.0) + tol) return ClassC::Loxodromic;
  // Here |tr| of the true product is <= 2 + tol, hence representable; rebuild
  // it in polar form and solve the det-1 characteristic equation.
  cplx tr = std::abs(p.mat.trace()) == 0.0
                ? cplx(0.0, 0.0)
                : std::polar(std::exp(lt), std::arg(p.mat.trace()));
  cplx sq = std::sqrt(tr * tr - 4.0);
  cplx big = std::abs(tr + sq) >= std::abs(tr - sq) ? (tr + sq) / 2.0 : (tr - sq) / 2.0;
  double mb = std::abs(big);
  if (mb == 0.0) return ClassC::NonLoxodromic;
  if (std::abs(mb - 1.0) > tol && std::abs(1.0 / mb - 1.0) > tol) return ClassC::Loxodromic;
  return ClassC::NonLoxodromic;
}

std::vector<std::pair<Word, Rat>> enumerate_mu_n(const MeasureSpec& spec, long n, long cap) {
  const std::size_t m = spec.size();
  double total = std::pow(static_cast<double>(m), static_cast<double>(n));
  if (total > static_cast<double>(cap))
    throw CapExceeded("|support|^n exceeds the enumeration cap");
  std::vector<std::pair<Word, Rat>> out;
  Word w(static_cast<std::size_t>(n), 0);
  for (;;) {
    Rat p(1);
    for (uint32_t idx : w) p *= spec.gens[idx].weight;
    p.canonicalize();
    out.emplace_back(w, p);
    // odometer increment, most significant digit first
    std::size_t i = w.size();
    while (i > 0) {
      --i;
      if (++w[i] < m) break;
      w[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

void parallel_samples(long n_samples, uint64_t seed, unsigned threads,
                      const std::function<void(long, SplitMix64&)>& fn) {
  if (threads <= 1 || n_samples <= 1) {
    for (long i = 0; i < n_samples; ++i) {
      SplitMix64 rng = stream_for(seed, static_cast<uint64_t>(i));
      fn(i, rng);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        long i = next.fetch_add(1);
        if (i >= n_samples) return;
        try {
          SplitMix64 rng = stream_for(seed, static_cast<uint64_t>(i));
          fn(i, rng);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

Estimate summarize(const std::vector<double>& values, long n_steps, uint64_t seed) {
  Estimate e;
  e.n_steps = n_steps;
  e.n_samples = static_cast<long>(values.size());
  e.seed = seed;
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.value = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.value) * (v - e.value);
    double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    e.stderror = sd / std::sqrt(static_cast<double>(values.size()));
  }
  return e;
}

unsigned default_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return std::min(hc == 0 ? 1u : hc, 8u);
}

}  // namespace lyapna
