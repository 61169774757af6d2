#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "lyapna/rational.hpp"

namespace lyapna {

// Truncated Laurent/Puiseux series over Q(i).
//
// A series lives in the variable u = t^(1/b) for a ramification index b >= 1.
// It stores the leading u-exponent `val`, a dense coefficient block starting
// at the leading coefficient, and an absolute u-precision `prec`: every term
// of u-exponent < prec is known exactly.  prec == kInfPrec marks an exact
// series (a Laurent polynomial in u).
//
// The t-adic order is ord = val / b, a rational, and the t-adic log-norm is
// -ord.  All cancellation detection is exact: the leading coefficient of a
// nonzero series is a nonzero Gaussian rational.
//
// The zero series is stored with an empty coefficient block.  When prec is
// finite it denotes O(u^prec): a value indistinguishable from zero at the
// working precision.  Asking such a value for its order raises
// PrecisionExhausted; arithmetic propagates it silently.
class Series {
 public:
  static constexpr long kInfPrec = std::numeric_limits<long>::max();
  // Default relative truncation budget: number of known terms beyond the
  // leading one produced by inv/sqrt on exact input.
  static constexpr long kDefaultBudget = 64;

  Series() : ram_(1), val_(0), prec_(kInfPrec) {}  // exact zero

  static Series zero(long prec_u = kInfPrec, long ram = 1);
  static Series constant(const GRat& c);
  static Series one() { return constant(GRat(1)); }
  // c * t^(num/den)
  static Series monomial(const GRat& c, long t_num, long t_den = 1);
  // Coefficients for u-exponents starting at val, in u = t^(1/ram).
  static Series from_coeffs(long ram, long val, std::vector<GRat> coeffs,
                            long prec_u = kInfPrec);

  long ram() const { return ram_; }
  long val_u() const { return val_; }
  long prec_u() const { return prec_; }
  bool is_exact() const { return prec_ == kInfPrec; }
  bool has_terms() const { return !coeffs_.empty(); }
  // True when the value is literally the zero series (exactly known).
  bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }
  // True when no nonzero coefficient is known (exact zero or O(u^prec)).
  bool is_zero_like() const { return coeffs_.empty(); }

  // Exact t-adic order; +inf for the exact zero series.  Raises
  // PrecisionExhausted on a finite-precision zero.
  Ord ord() const;
  Ord logabs_na() const { return -ord(); }
  // Lower bound on the order that is always available: ord for nonzero
  // series, prec/ram for zero-like ones.
  Ord ord_lower_bound() const;

  const GRat& leading() const;
  // Coefficient of u^{val+k} within the known block (0 outside the block).
  GRat coeff_u(long uexp) const;
  // Coefficient of t^(num/den); exact for known exponents.
  GRat coeff_t(long t_num, long t_den = 1) const;
  std::size_t term_count() const { return coeffs_.size(); }

  Series operator-() const;
  friend Series operator+(const Series& f, const Series& g);
  friend Series operator-(const Series& f, const Series& g);
  friend Series operator*(const Series& f, const Series& g);
  Series& operator+=(const Series& g) { return *this = *this + g; }
  Series& operator-=(const Series& g) { return *this = *this - g; }
  Series& operator*=(const Series& g) { return *this = *this * g; }

  // Multiplicative inverse.  ZeroDivision on the exact zero series,
  // PrecisionExhausted on a finite-precision zero.  The result keeps
  // min(relative precision of f, budget) terms; exact for monomials.
  Series inv(long budget = kDefaultBudget) const;

  // Keep only terms of u-exponent < prec_u (also lowers the precision mark).
  Series truncate_abs_u(long prec_u) const;
  // Keep `terms` coefficients beyond the leading exponent.
  Series truncate_rel(long terms) const;

  // Structural equality of canonical representations (same ram, val,
  // coefficients and precision).
  friend bool operator==(const Series& f, const Series& g);
  friend bool operator!=(const Series& f, const Series& g) { return !(f == g); }

  // Evaluation at 0 < |t0| < 1 for exact series; principal branch for
  // fractional powers.  Raises InexactSeries on truncated input.
  std::complex<double> evaluate(std::complex<double> t0) const;
  // Evaluation of the known terms only; also accepts truncated series.  The
  // neglected tail is O(|t0|^(prec/ram)).
  std::complex<double> evaluate_known(std::complex<double> t0) const;

  // Printed in the input grammar when ram == 1 (fractional exponents are
  // rendered with an explicit caret over t^(1/ram) otherwise, for diagnostics
  // only).  Truncated series get a trailing O(...) marker.
  std::string to_string() const;

  // min(ord f, ord g) <= prec side-condition helpers used by callers that
  // need certified order comparisons.
  static bool indistinguishable(const Series& f, const Series& g);

 private:
  void canonicalize();
  static void merge_ram(Series& f, Series& g);
  Series rescale_ram(long factor) const;  // multiply ram by factor

  long ram_;
  long val_;                 // u-exponent of coeffs_[0] (nonzero series only)
  std::vector<GRat> coeffs_; // dense block, leading coefficient first
  long prec_;                // absolute u-precision, kInfPrec if exact
};

Series sqrt(const Series& f, long budget = Series::kDefaultBudget);

struct SqrtResult {
  Series value;
  bool used_float_fallback = false;
};
// Like sqrt() but, when the exact leading coefficient has no square root in
// Q(i), falls back to the double-precision complex root embedded back into
// Q(i) as a dyadic rational; the flag records that the coefficients are only
// float-accurate from then on.
SqrtResult sqrt_with_fallback(const Series& f, long budget = Series::kDefaultBudget);

}  // namespace lyapna
