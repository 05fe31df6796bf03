#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace plk {

using Rational = mpq_class;
using Integer = mpz_class;

Rational rat(std::int64_t num, std::int64_t den = 1);

// Renders as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "p", "p/q" and finite decimals such as "0.25".
Rational parse_rational(const std::string& text);

Rational pow(const Rational& base, unsigned exp);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);

double to_double(const Rational& r);

// Tests x^(1/a) <= y^(1/b) for nonnegative x, y by comparing x^b <= y^a.
bool root_le(const Rational& x, unsigned a, const Rational& y, unsigned b);

}  // namespace plk
