#include "plk/surd.hpp"

#include <cmath>

#include "plk/error.hpp"

namespace plk {

namespace {

// Splits n = s^2 * d with d squarefree.
void split_square(Integer n, Integer& s, Integer& d) {
  s = 1;
  d = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      d *= p;
    }
  }
  d *= n;
}

}  // namespace

Surd::Surd(const Rational& a, const Rational& b, const Integer& d) : a_(a), b_(b), d_(d) {
  require(d_ >= 1, ErrorKind::InvalidInput, "surd radicand must be positive");
  Integer s, sq;
  split_square(d_, s, sq);
  d_ = sq;
  b_ *= s;
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (sgn(b_) == 0) d_ = 1;
}

Surd Surd::sqrt(const Rational& r) {
  require(sgn(r) >= 0, ErrorKind::InvalidInput, "sqrt of a negative rational");
  // sqrt(p/q) = sqrt(p*q)/q
  Integer pq = r.get_num() * r.get_den();
  if (pq == 0) return Surd();
  return Surd(Rational(0), Rational(1, 1) / Rational(r.get_den()), pq);
}

void Surd::unify(const Surd& o) {
  if (o.d_ == 1 || d_ == o.d_) return;
  if (d_ == 1) {
    d_ = o.d_;
    return;
  }
  fail(ErrorKind::InvalidInput, "surds with different radicands");
}

int Surd::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 d
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(d_);
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

Surd Surd::inverse() const {
  require(sign() != 0, ErrorKind::InvalidInput, "inverse of zero surd");
  Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  return Surd(a_ / norm, -b_ / norm, d_);
}

Surd& Surd::operator+=(const Surd& o) {
  unify(o);
  a_ += o.a_;
  b_ += o.b_;
  if (sgn(b_) == 0) d_ = 1;
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  unify(o);
  a_ -= o.a_;
  b_ -= o.b_;
  if (sgn(b_) == 0) d_ = 1;
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  unify(o);
  Rational na = a_ * o.a_ + b_ * o.b_ * Rational(d_);
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  if (sgn(b_) == 0) d_ = 1;
  return *this;
}

double Surd::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

std::string Surd::to_string() const {
  if (is_rational()) return plk::to_string(a_);
  return plk::to_string(a_) + " + " + plk::to_string(b_) + "*sqrt(" + d_.get_str() + ")";
}

Surd pow(const Surd& base, unsigned exp) {
  Surd out(Rational(1));
  Surd b = base;
  while (exp) {
    if (exp & 1u) out *= b;
    b *= b;
    exp >>= 1u;
  }
  return out;
}

}  // namespace plk
