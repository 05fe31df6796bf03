#include "plk/rational.hpp"

#include "plk/error.hpp"

namespace plk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::GuardExceeded: return "guard exceeded";
    case ErrorKind::Clipping: return "clipping detected";
    case ErrorKind::WindowTooSmall: return "window too small";
    case ErrorKind::HypothesisViolated: return "hypothesis violated";
    case ErrorKind::ContractFailure: return "contract failure";
  }
  return "error";
}

Rational rat(std::int64_t num, std::int64_t den) {
  require(den != 0, ErrorKind::InvalidInput, "zero denominator");
  Rational r(Integer(std::to_string(num)), Integer(std::to_string(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
  require(!text.empty(), ErrorKind::InvalidInput, "empty rational");
  try {
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      require(text.find('/') == std::string::npos, ErrorKind::InvalidInput, "bad rational: " + text);
      Integer num(digits, 10);
      Integer den = 1;
      for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    Rational r(text, 10);
    require(r.get_den() != 0, ErrorKind::InvalidInput, "zero denominator: " + text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::InvalidInput, "bad rational: " + text);
  }
}

Rational pow(const Rational& base, unsigned exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

double to_double(const Rational& r) { return r.get_d(); }

bool root_le(const Rational& x, unsigned a, const Rational& y, unsigned b) {
  require(sgn(x) >= 0 && sgn(y) >= 0, ErrorKind::InvalidInput, "root_le needs nonnegative operands");
  require(a > 0 && b > 0, ErrorKind::InvalidInput, "root_le needs positive root orders");
  return pow(x, b) <= pow(y, a);
}

}  // namespace plk
