#include "heatsum/rational.hpp"

#include <ostream>

namespace heatsum {

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  auto slash = s.find('/');
  auto check_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!check_int(s)) throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
    return Rational(Integer(s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  if (!check_int(p) || !check_int(q))
    throw std::invalid_argument("Rational::parse: bad fraction '" + s + "'");
  Integer den(q);
  if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
  return Rational(Integer(p), den);
}

std::string Rational::str() const {
  std::string out = v_.get_num().get_str();
  if (v_.get_den() != 1) {
    out += '/';
    out += v_.get_den().get_str();
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base.is_zero()) {
    if (exp < 0) throw std::domain_error("pow: zero base, negative exponent");
    return Rational(0);
  }
  bool invert = exp < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), e);
  Rational r(num, den);
  return invert ? r.inverse() : r;
}

std::int64_t floor_div(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("floor_div: zero denominator");
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return to_int64(q);
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("to_int64: value out of range");
  return static_cast<std::int64_t>(z.get_si());
}

}  // namespace heatsum
