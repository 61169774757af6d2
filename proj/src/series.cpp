#include "lyapna/series.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lyapna {

namespace {

long sat_add(long a, long b) {
  if (a == Series::kInfPrec || b == Series::kInfPrec) return Series::kInfPrec;
  return a + b;
}

long gcd_l(long a, long b) { return std::gcd(std::labs(a), std::labs(b)); }

}  // namespace

Series Series::zero(long prec_u, long ram) {
  Series s;
  s.ram_ = ram;
  s.prec_ = prec_u;
  s.canonicalize();
  return s;
}

Series Series::constant(const GRat& c) { return monomial(c, 0); }

Series Series::monomial(const GRat& c, long t_num, long t_den) {
  assert(t_den >= 1);
  long g = std::gcd(std::labs(t_num), t_den);
  if (g > 1) {
    t_num /= g;
    t_den /= g;
  }
  Series s;
  s.ram_ = t_den;
  s.val_ = t_num;
  s.coeffs_ = {c};
  s.prec_ = kInfPrec;
  s.canonicalize();
  return s;
}

Series Series::from_coeffs(long ram, long val, std::vector<GRat> coeffs, long prec_u) {
  Series s;
  s.ram_ = ram;
  s.val_ = val;
  s.coeffs_ = std::move(coeffs);
  s.prec_ = prec_u;
  s.canonicalize();
  return s;
}

void Series::canonicalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead > 0) {
    val_ += static_cast<long>(lead);
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
  }
  if (prec_ != kInfPrec && !coeffs_.empty()) {
    if (val_ >= prec_) {
      coeffs_.clear();
    } else if (val_ + static_cast<long>(coeffs_.size()) > prec_) {
      coeffs_.resize(static_cast<std::size_t>(prec_ - val_));
    }
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();

  if (coeffs_.empty()) {
    val_ = 0;
    if (prec_ == kInfPrec) {
      ram_ = 1;
    } else {
      long g = std::gcd(ram_, std::labs(prec_));
      if (g == 0) g = 1;
      if (g > 1) {
        ram_ /= g;
        prec_ /= g;
      }
    }
    return;
  }

  // Reduce the ramification index for exact series only: a truncated series
  // may have unknown terms off the coarser exponent lattice, so its ram is
  // part of what is known about it.
  if (prec_ == kInfPrec && ram_ > 1) {
    long g = gcd_l(ram_, val_);
    for (std::size_t k = 1; k < coeffs_.size() && g > 1; ++k)
      if (!coeffs_[k].is_zero()) g = gcd_l(g, val_ + static_cast<long>(k));
    if (g > 1) {
      std::vector<GRat> reduced((coeffs_.size() - 1) / static_cast<std::size_t>(g) + 1);
      for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        assert((val_ + static_cast<long>(k)) % g == 0);
        reduced[k / static_cast<std::size_t>(g)] = coeffs_[k];
      }
      coeffs_ = std::move(reduced);
      val_ /= g;
      ram_ /= g;
    }
  }
}

Series Series::rescale_ram(long factor) const {
  assert(factor >= 1);
  if (factor == 1) return *this;
  Series s;
  s.ram_ = ram_ * factor;
  s.prec_ = prec_ == kInfPrec ? kInfPrec : prec_ * factor;
  if (coeffs_.empty()) {
    s.val_ = 0;
    return s;
  }
  s.val_ = val_ * factor;
  s.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(factor) + 1, GRat());
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    s.coeffs_[k * static_cast<std::size_t>(factor)] = coeffs_[k];
  return s;
}

void Series::merge_ram(Series& f, Series& g) {
  if (f.ram_ == g.ram_) return;
  long l = std::lcm(f.ram_, g.ram_);
  f = f.rescale_ram(l / f.ram_);
  g = g.rescale_ram(l / g.ram_);
}

Ord Series::ord() const {
  if (coeffs_.empty()) {
    if (prec_ == kInfPrec) return Ord::pos_inf();
    throw PrecisionExhausted("order of a series indistinguishable from 0 at precision O(t^" +
                             rat_to_string(Rat(prec_, ram_)) + ")");
  }
  Rat q(val_, ram_);
  q.canonicalize();
  return Ord(q);
}

Ord Series::ord_lower_bound() const {
  if (!coeffs_.empty()) return ord();
  if (prec_ == kInfPrec) return Ord::pos_inf();
  Rat q(prec_, ram_);
  q.canonicalize();
  return Ord(q);
}

const GRat& Series::leading() const {
  if (coeffs_.empty()) throw PrecisionExhausted("leading coefficient of a zero-like series");
  return coeffs_.front();
}

GRat Series::coeff_u(long uexp) const {
  if (prec_ != kInfPrec && uexp >= prec_)
    throw PrecisionExhausted("coefficient query beyond the precision mark");
  if (coeffs_.empty()) return GRat();
  long k = uexp - val_;
  if (k < 0 || k >= static_cast<long>(coeffs_.size())) return GRat();
  return coeffs_[static_cast<std::size_t>(k)];
}

GRat Series::coeff_t(long t_num, long t_den) const {
  assert(t_den >= 1);
  // u-exponent = (t_num/t_den) * ram
  long num = t_num * ram_;
  if (num % t_den != 0) {
    // Off the exponent lattice: known to be zero below the precision mark.
    Rat q(t_num, t_den);
    q.canonicalize();
    if (prec_ != kInfPrec && q * ram_ >= prec_)
      throw PrecisionExhausted("coefficient query beyond the precision mark");
    return GRat();
  }
  return coeff_u(num / t_den);
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

Series operator+(const Series& fin, const Series& gin) {
  Series f = fin, g = gin;
  Series::merge_ram(f, g);
  long prec = std::min(f.prec_, g.prec_);
  if (f.coeffs_.empty()) return g.truncate_abs_u(prec);
  if (g.coeffs_.empty()) return f.truncate_abs_u(prec);

  long lo = std::min(f.val_, g.val_);
  long hi = std::max(f.val_ + static_cast<long>(f.coeffs_.size()),
                     g.val_ + static_cast<long>(g.coeffs_.size()));
  if (prec != Series::kInfPrec) hi = std::min(hi, prec);
  std::vector<GRat> out;
  if (hi > lo) {
    out.assign(static_cast<std::size_t>(hi - lo), GRat());
    for (std::size_t k = 0; k < f.coeffs_.size(); ++k) {
      long e = f.val_ + static_cast<long>(k);
      if (e >= hi) break;
      out[static_cast<std::size_t>(e - lo)] = out[static_cast<std::size_t>(e - lo)] + f.coeffs_[k];
    }
    for (std::size_t k = 0; k < g.coeffs_.size(); ++k) {
      long e = g.val_ + static_cast<long>(k);
      if (e >= hi) break;
      out[static_cast<std::size_t>(e - lo)] = out[static_cast<std::size_t>(e - lo)] + g.coeffs_[k];
    }
  }
  return Series::from_coeffs(f.ram_, lo, std::move(out), prec);
}

Series operator-(const Series& f, const Series& g) { return f + (-g); }

Series operator*(const Series& fin, const Series& gin) {
  Series f = fin, g = gin;
  Series::merge_ram(f, g);
  if (f.coeffs_.empty() || g.coeffs_.empty()) {
    if (f.is_exact_zero() || g.is_exact_zero()) return Series::zero(Series::kInfPrec, 1);
    long lb_f = f.coeffs_.empty() ? f.prec_ : f.val_;
    long lb_g = g.coeffs_.empty() ? g.prec_ : g.val_;
    return Series::zero(sat_add(lb_f, lb_g), f.ram_);
  }
  long val = f.val_ + g.val_;
  long prec = std::min(sat_add(f.val_, g.prec_), sat_add(g.val_, f.prec_));
  std::size_t nf = f.coeffs_.size(), ng = g.coeffs_.size();
  std::size_t nterms = nf + ng - 1;
  if (prec != Series::kInfPrec)
    nterms = std::min(nterms, static_cast<std::size_t>(std::max(0L, prec - val)));
  std::vector<GRat> out(nterms, GRat());
  for (std::size_t i = 0; i < nf; ++i) {
    if (f.coeffs_[i].is_zero()) continue;
    std::size_t jmax = std::min(ng, nterms > i ? nterms - i : 0);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (g.coeffs_[j].is_zero()) continue;
      out[i + j] = out[i + j] + f.coeffs_[i] * g.coeffs_[j];
    }
  }
  return Series::from_coeffs(f.ram_, val, std::move(out), prec);
}

Series Series::inv(long budget) const {
  if (coeffs_.empty()) {
    if (is_exact_zero()) throw ZeroDivision("inverse of the zero series");
    throw PrecisionExhausted("inverse of a series indistinguishable from 0");
  }
  if (coeffs_.size() == 1 && is_exact())
    return from_coeffs(ram_, -val_, {coeffs_[0].inv()}, kInfPrec);

  long rel = is_exact() ? budget : std::min(prec_ - val_, budget);
  rel = std::max(rel, 1L);
  GRat c0i = coeffs_[0].inv();
  std::vector<GRat> w(static_cast<std::size_t>(rel), GRat());
  w[0] = c0i;
  for (long n = 1; n < rel; ++n) {
    GRat acc;
    long kmax = std::min<long>(n, static_cast<long>(coeffs_.size()) - 1);
    for (long k = 1; k <= kmax; ++k) {
      if (coeffs_[static_cast<std::size_t>(k)].is_zero()) continue;
      acc = acc + coeffs_[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(n - k)];
    }
    w[static_cast<std::size_t>(n)] = -(c0i * acc);
  }
  return from_coeffs(ram_, -val_, std::move(w), -val_ + rel);
}

Series Series::truncate_abs_u(long prec_u) const {
  if (is_exact_zero()) return *this;  // every coefficient is known to vanish
  if (prec_u >= prec_) return *this;
  Series s = *this;
  s.prec_ = prec_u;
  s.canonicalize();
  return s;
}

Series Series::truncate_rel(long terms) const {
  if (coeffs_.empty()) return *this;
  return truncate_abs_u(sat_add(val_, std::max(terms, 1L)));
}

bool operator==(const Series& f, const Series& g) {
  if (f.ram_ != g.ram_ || f.prec_ != g.prec_) return false;
  if (f.coeffs_.empty() || g.coeffs_.empty()) return f.coeffs_.empty() && g.coeffs_.empty();
  return f.val_ == g.val_ && f.coeffs_ == g.coeffs_;
}

bool Series::indistinguishable(const Series& f, const Series& g) {
  return (f - g).is_zero_like();
}

std::complex<double> Series::evaluate(std::complex<double> t0) const {
  if (!is_exact()) throw InexactSeries("evaluate requires an exact series");
  return evaluate_known(t0);
}

namespace {

std::complex<double> ipow(std::complex<double> base, long e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  std::complex<double> acc(1.0, 0.0);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace

std::complex<double> Series::evaluate_known(std::complex<double> t0) const {
  if (coeffs_.empty()) return {0.0, 0.0};
  assert(t0 != std::complex<double>(0.0, 0.0));
  std::complex<double> u = ram_ == 1 ? t0 : std::exp(std::log(t0) / static_cast<double>(ram_));
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * u + coeffs_[k].to_complex();
  return acc * ipow(u, val_);
}

Series sqrt(const Series& f, long budget) {
  SqrtResult r = sqrt_with_fallback(f, budget);
  if (r.used_float_fallback)
    throw CoefficientNotASquare("leading coefficient has no square root in Q(i)");
  return r.value;
}

SqrtResult sqrt_with_fallback(const Series& f, long budget) {
  if (f.is_zero_like()) {
    if (f.is_exact_zero()) return {Series(), false};
    throw PrecisionExhausted("square root of a series indistinguishable from 0");
  }
  const long v = f.val_u();
  const bool ramify = (v % 2) != 0;  // odd leading exponent: pass to t^(1/2b)
  GRat c0 = f.leading();
  auto rt = c0.sqrt();
  bool fallback = false;
  if (!rt) {
    std::complex<double> z = std::sqrt(c0.to_complex());
    rt = GRat(dyadic_from_double(z.real()), dyadic_from_double(z.imag()));
    fallback = true;
  }
  if (f.term_count() == 1 && f.is_exact()) {
    if (!ramify) return {Series::from_coeffs(f.ram(), v / 2, {*rt}, Series::kInfPrec), fallback};
    return {Series::from_coeffs(2 * f.ram(), v, {*rt}, Series::kInfPrec), fallback};
  }

  // Hensel recursion for (1 + h)^(1/2) on the original u-lattice; the square
  // root of c0 * u^v * (1 + h) is rt * u^(v/2) * w(u), with the half-integer
  // exponent realized by doubling the ramification when v is odd.
  long rel = f.is_exact() ? budget : std::min(f.prec_u() - v, budget);
  rel = std::max(rel, 1L);
  GRat c0i = c0.inv();
  const GRat half(Rat(1, 2));
  std::vector<GRat> w(static_cast<std::size_t>(rel), GRat());
  w[0] = GRat(1);
  for (long n = 1; n < rel; ++n) {
    GRat gn = (n < static_cast<long>(f.term_count())) ? f.coeff_u(v + n) * c0i : GRat();
    GRat acc;
    for (long k = 1; k <= n - 1; ++k)
      acc = acc + w[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(n - k)];
    w[static_cast<std::size_t>(n)] = (gn - acc) * half;
  }
  for (auto& c : w) c = *rt * c;

  if (!ramify)
    return {Series::from_coeffs(f.ram(), v / 2, std::move(w), v / 2 + rel), fallback};
  std::vector<GRat> strided(static_cast<std::size_t>(2 * (rel - 1) + 1), GRat());
  for (long j = 0; j < rel; ++j) strided[static_cast<std::size_t>(2 * j)] = w[static_cast<std::size_t>(j)];
  return {Series::from_coeffs(2 * f.ram(), v, std::move(strided), v + 2 * rel), fallback};
}

namespace {

// A coefficient that can stand bare inside a sum of terms: a plain
// nonnegative rational ("3", "1/2").  Anything else gets parenthesized.
bool plain_rational(const std::string& s) {
  if (s.empty() || s[0] == '-') return false;
  return s.find_first_not_of("0123456789/") == std::string::npos;
}

std::string coeff_factor(const GRat& c) {
  std::string cs = c.to_string();
  return plain_rational(cs) ? cs : "(" + cs + ")";
}

}  // namespace

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    long e = val_ + static_cast<long>(k);
    const GRat& c = coeffs_[k];
    if (e == 0) {
      os << (c == GRat(1) ? "1" : coeff_factor(c));
      continue;
    }
    long ae = std::labs(e);
    std::string tpow;
    long g = std::gcd(ae, ram_);
    long num = ae / g, den = ram_ / g;
    if (den == 1)
      tpow = num == 1 ? "t" : "t^" + std::to_string(num);
    else
      tpow = "t^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
    if (e > 0) {
      if (c == GRat(1))
        os << tpow;
      else
        os << coeff_factor(c) << "*" << tpow;
    } else {
      if (c == GRat(1))
        os << "1/" << tpow;
      else
        os << coeff_factor(c) << "/" << tpow;
    }
  }
  if (first) os << "0";
  if (prec_ != kInfPrec) {
    long g = std::gcd(std::labs(std::max(prec_, 1L)), ram_);
    if (g == 0) g = 1;
    long num = prec_ / g, den = ram_ / g;
    os << " + O(t^" << (den == 1 ? std::to_string(num)
                                 : "(" + std::to_string(num) + "/" + std::to_string(den) + ")")
       << ")";
  }
  return os.str();
}

}  // namespace lyapna
