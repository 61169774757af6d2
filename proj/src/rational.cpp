#include "lyapna/rational.hpp"

#include <cmath>
#include <limits>

namespace lyapna {

std::optional<Rat> exact_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rat(0);
  // q is canonical: num/den in lowest terms, den > 0. q is a square in Q
  // iff num and den are both perfect squares in Z.
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

Rat dyadic_from_double(double x) {
  Rat r;
  mpq_set_d(r.get_mpq_t(), x);
  r.canonicalize();
  return r;
}

std::optional<GRat> GRat::sqrt() const {
  if (is_zero()) return GRat();
  if (im_ == 0) {
    if (re_ > 0) {
      auto r = exact_sqrt(re_);
      if (!r) return std::nullopt;
      return GRat(*r);
    }
    auto r = exact_sqrt(-re_);
    if (!r) return std::nullopt;
    return GRat(Rat(0), *r);
  }
  // (x + iy)^2 = a + ib needs x^2 + y^2 = |a+ib| rational, then
  // x^2 = (a + n)/2 a rational square; y follows from 2xy = b.
  auto n = exact_sqrt(norm2());
  if (!n) return std::nullopt;
  Rat x2 = (re_ + *n) / 2;
  auto x = exact_sqrt(x2);
  if (!x) return std::nullopt;
  if (*x == 0) return std::nullopt;  // cannot happen for im_ != 0
  Rat y = im_ / (2 * *x);
  GRat root(*x, y);
  if (root.re() < 0 || (root.re() == 0 && root.im() < 0)) root = -root;
  return root;
}

std::string rat_to_string(const Rat& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

std::string GRat::to_string() const {
  if (is_zero()) return "0";
  if (im_ == 0) return rat_to_string(re_);
  std::string im_part;
  if (im_ == 1)
    im_part = "i";
  else if (im_ == -1)
    im_part = "-i";
  else
    im_part = rat_to_string(im_) + "*i";
  if (re_ == 0) return im_part;
  if (im_ > 0) return rat_to_string(re_) + "+" + im_part;
  return rat_to_string(re_) + im_part;  // im_part already carries the minus
}

double Ord::to_double() const {
  switch (kind_) {
    case Kind::Finite:
      return q_.get_d();
    case Kind::PosInf:
      return std::numeric_limits<double>::infinity();
    default:
      return -std::numeric_limits<double>::infinity();
  }
}

Ord Ord::operator-() const {
  switch (kind_) {
    case Kind::Finite:
      return Ord(Rat(-q_));
    case Kind::PosInf:
      return neg_inf();
    default:
      return pos_inf();
  }
}

Ord operator+(const Ord& a, const Ord& b) {
  if (a.is_finite() && b.is_finite()) return Ord(Rat(a.q_ + b.q_));
  if (a.is_pos_inf() && b.is_neg_inf()) throw PrecisionExhausted("inf - inf in order arithmetic");
  if (a.is_neg_inf() && b.is_pos_inf()) throw PrecisionExhausted("inf - inf in order arithmetic");
  if (a.is_pos_inf() || b.is_pos_inf()) return Ord::pos_inf();
  return Ord::neg_inf();
}

bool operator==(const Ord& a, const Ord& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != Ord::Kind::Finite) return true;
  return a.q_ == b.q_;
}

bool operator<(const Ord& a, const Ord& b) {
  if (a.is_neg_inf()) return !b.is_neg_inf();
  if (a.is_finite()) {
    if (b.is_pos_inf()) return true;
    if (b.is_finite()) return a.q_ < b.q_;
    return false;
  }
  return false;  // a = +inf
}

std::string Ord::to_string() const {
  switch (kind_) {
    case Kind::Finite:
      return rat_to_string(q_);
    case Kind::PosInf:
      return "inf";
    default:
      return "-inf";
  }
}

}  // namespace lyapna
