#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heatsum/rational.hpp"

namespace heatsum {

std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Coefficients of the N-th cyclotomic polynomial in ascending degree
/// (monic, degree phi(N)). Computed by exact division of x^N - 1 by the
/// product of the cyclotomic polynomials of the proper divisors of N.
/// Memoized behind a lock; the returned reference stays valid.
const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t N);

/**
 * Element of the cyclotomic field Q(zeta_N), stored in the power basis
 * 1, x, ..., x^{phi(N)-1} of Q[x]/(Phi_N(x)).
 *
 * The conductor is lazy: a value carries the modulus it was created at,
 * not necessarily the smallest field containing it. Mixed-conductor
 * arithmetic promotes both operands to the lcm of their conductors via
 * zeta_N = zeta_M^{M/N}. Within a fixed conductor the representation is
 * canonical, so equality after promotion is coefficient-wise.
 *
 * Internally the coefficient vector is held as integers over a single
 * positive denominator with unit content gcd; coeff(k) exposes the exact
 * Rational value.
 */
class CycloNumber {
 public:
  CycloNumber() : CycloNumber(Rational(0)) {}
  CycloNumber(const Rational& r);  // NOLINT: implicit by design
  CycloNumber(long v) : CycloNumber(Rational(v)) {}

  /// sum of w * x^e over the given (exponent, weight) pairs at conductor N.
  /// Exponents are taken mod N.
  static CycloNumber from_monomials(std::uint32_t N, const std::vector<std::pair<std::int64_t, Rational>>& terms);

  std::uint32_t conductor() const { return n_; }
  std::size_t degree() const { return num_.size(); }
  Rational coeff(std::size_t k) const { return Rational(num_[k], den_); }
  std::vector<Rational> coeffs() const;

  bool is_zero() const;
  bool is_rational() const;
  /// Constant coefficient when is_rational(); throws otherwise.
  Rational rational_value() const;

  /// Embedding into Q(zeta_M); requires conductor() | M.
  CycloNumber promoted(std::uint32_t M) const;
  /// Complex conjugation, the coefficient-level map zeta -> zeta^{-1}.
  CycloNumber conj() const;
  /// Multiplicative inverse via the extended Euclidean algorithm against
  /// Phi_N over Q[x]. Throws on zero.
  CycloNumber inverse() const;

  /// Numerical embedding x -> exp(2 pi i / N).
  std::complex<double> to_complex() const;

  CycloNumber operator-() const;
  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator*(const Rational& r, const CycloNumber& a);
  CycloNumber& operator+=(const CycloNumber& o) { *this = *this + o; return *this; }
  CycloNumber& operator-=(const CycloNumber& o) { *this = *this - o; return *this; }
  CycloNumber& operator*=(const CycloNumber& o) { *this = *this * o; return *this; }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

 private:
  CycloNumber(std::uint32_t n, std::vector<Integer> num, Integer den);
  void normalize();

  std::uint32_t n_ = 1;       // conductor
  Integer den_ = 1;           // > 0, coprime to the content of num_
  std::vector<Integer> num_;  // length phi(n_), ascending degree
};

/// zeta_N^e (exponent taken mod N).
CycloNumber root_of_unity(std::uint32_t N, std::int64_t e);

/// exp(2 pi i t) for rational t, at conductor den(t).
CycloNumber root_of_unity(const Rational& t);

/// Exact cos(2 pi t) and sin(2 pi t) at conductor lcm(den(t), 4):
/// cos = (z + z^-1)/2 and sin = (z - z^-1)/(2i) with z = exp(2 pi i t).
struct CosSin {
  CycloNumber cos;
  CycloNumber sin;
};
CosSin cos_sin_of_rational_angle(const Rational& t);

CycloNumber pow(const CycloNumber& base, std::uint64_t exp);

/// Human-readable canonical form: "p" or "p/q" for rational values,
/// otherwise "zetaN:[c0 e0, c1 e1, ...]" listing nonzero power-basis
/// coefficients at the value's conductor.
std::string to_string(const CycloNumber& v);

}  // namespace heatsum
