#pragma once

#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "lyapna/errors.hpp"

namespace lyapna {

using Rat = mpq_class;

// Exact nonnegative square root of a rational, when it is a perfect square.
std::optional<Rat> exact_sqrt(const Rat& q);

// Rounds-to-double then back: every IEEE double is a dyadic rational, so this
// is an exact embedding of the float value into Q.
Rat dyadic_from_double(double x);

// Gaussian rational a + b*i with both parts stored in lowest terms.
class GRat {
 public:
  GRat() : re_(0), im_(0) {}
  GRat(long n) : re_(n), im_(0) {}
  GRat(const Rat& re) : re_(re), im_(0) { canonicalize(); }
  GRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) { canonicalize(); }
  static GRat i() { return GRat(Rat(0), Rat(1)); }

  const Rat& re() const { return re_; }
  const Rat& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GRat operator-() const { return GRat(-re_, -im_); }
  GRat conj() const { return GRat(re_, -im_); }
  Rat norm2() const { return re_ * re_ + im_ * im_; }

  friend GRat operator+(const GRat& a, const GRat& b) {
    return GRat(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend GRat operator-(const GRat& a, const GRat& b) {
    return GRat(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend GRat operator*(const GRat& a, const GRat& b) {
    return GRat(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  GRat inv() const {
    if (is_zero()) throw ZeroDivision("inverse of zero Gaussian rational");
    Rat n = norm2();
    return GRat(re_ / n, -im_ / n);
  }
  friend GRat operator/(const GRat& a, const GRat& b) { return a * b.inv(); }

  friend bool operator==(const GRat& a, const GRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }

  // Exact square root in Q(i), if one exists. The root with re > 0
  // (or re == 0 and im >= 0) is returned.
  std::optional<GRat> sqrt() const;

  std::complex<double> to_complex() const {
    return {re_.get_d(), im_.get_d()};
  }

  // Rendered in the expression grammar: "3", "-1/2", "i", "2*i", "1+2*i", ...
  std::string to_string() const;

 private:
  void canonicalize() {
    re_.canonicalize();
    im_.canonicalize();
  }
  Rat re_, im_;
};

// Extended rational used for t-adic orders: finite, +inf (order of the zero
// series), or -inf (log-norm of the zero series).
class Ord {
 public:
  Ord() : kind_(Kind::Finite), q_(0) {}
  Ord(Rat q) : kind_(Kind::Finite), q_(std::move(q)) {}
  Ord(long n) : kind_(Kind::Finite), q_(n) {}
  static Ord pos_inf() { return Ord(Kind::PosInf); }
  static Ord neg_inf() { return Ord(Kind::NegInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  const Rat& q() const {
    if (!is_finite()) throw PrecisionExhausted("infinite order used as a finite value");
    return q_;
  }
  double to_double() const;

  Ord operator-() const;
  friend Ord operator+(const Ord& a, const Ord& b);
  friend bool operator==(const Ord& a, const Ord& b);
  friend bool operator!=(const Ord& a, const Ord& b) { return !(a == b); }
  friend bool operator<(const Ord& a, const Ord& b);
  friend bool operator<=(const Ord& a, const Ord& b) { return a < b || a == b; }
  friend bool operator>(const Ord& a, const Ord& b) { return b < a; }
  friend bool operator>=(const Ord& a, const Ord& b) { return b <= a; }

  std::string to_string() const;

 private:
  enum class Kind { Finite, PosInf, NegInf };
  explicit Ord(Kind k) : kind_(k), q_(0) {}
  Kind kind_;
  Rat q_;
};

inline Ord min(const Ord& a, const Ord& b) { return a < b ? a : b; }
inline Ord max(const Ord& a, const Ord& b) { return a < b ? b : a; }

std::string rat_to_string(const Rat& q);

}  // namespace lyapna
