#pragma once

#include <string>

#include "plk/rational.hpp"

namespace plk {

// Exact element a + b*sqrt(d) of the quadratic field Q(sqrt d), d >= 1 squarefree.
// d == 1 means the value is rational and b is always zero.
class Surd {
 public:
  Surd() : a_(0), b_(0), d_(1) {}
  Surd(const Rational& a) : a_(a), b_(0), d_(1) {}  // NOLINT(google-explicit-constructor)
  Surd(const Rational& a, const Rational& b, const Integer& d);

  // sqrt(r) for a nonnegative rational r.
  static Surd sqrt(const Rational& r);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& d() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  int sign() const;
  Surd conjugate() const { return Surd(a_, -b_, d_); }
  Surd inverse() const;

  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o) { return *this *= o.inverse(); }

  friend Surd operator+(Surd x, const Surd& y) { return x += y; }
  friend Surd operator-(Surd x, const Surd& y) { return x -= y; }
  friend Surd operator*(Surd x, const Surd& y) { return x *= y; }
  friend Surd operator/(Surd x, const Surd& y) { return x /= y; }
  Surd operator-() const { return Surd(-a_, -b_, d_); }

  friend bool operator==(const Surd& x, const Surd& y) { return (x - y).sign() == 0; }
  friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
  friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
  friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

  double to_double() const;
  std::string to_string() const;

 private:
  void unify(const Surd& o);

  Rational a_, b_;
  Integer d_;
};

Surd pow(const Surd& base, unsigned exp);

}  // namespace plk
