#include "heatsum/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace heatsum {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

using Poly = std::vector<Integer>;  // ascending degree

std::size_t poly_degree(const Poly& p) {
  std::size_t d = p.size();
  while (d > 0 && p[d - 1] == 0) --d;
  return d;  // number of coefficients up to the leading nonzero
}

// Exact division of a by monic b; remainder must vanish.
Poly poly_divexact_monic(Poly a, const Poly& b) {
  std::size_t db = poly_degree(b);
  if (db == 0) throw std::logic_error("poly_divexact_monic: zero divisor");
  if (b[db - 1] != 1) throw std::logic_error("poly_divexact_monic: divisor not monic");
  std::size_t da = poly_degree(a);
  if (da < db) {
    if (da != 0) throw std::logic_error("poly_divexact_monic: inexact division");
    return {};
  }
  Poly q(da - db + 1, Integer(0));
  for (std::size_t i = da; i-- >= db;) {
    Integer c = a[i];
    if (c != 0) {
      q[i - (db - 1)] = c;
      for (std::size_t j = 0; j < db; ++j) a[i - (db - 1) + j] -= c * b[j];
    }
    if (i == db - 1) break;
  }
  for (const auto& c : a)
    if (c != 0) throw std::logic_error("poly_divexact_monic: nonzero remainder");
  return q;
}

// In-place remainder of a modulo the monic polynomial phi; a shrinks to
// degree < deg(phi). Coefficients stay integral because phi is monic.
void poly_mod_monic(Poly& a, const Poly& phi) {
  std::size_t dphi = poly_degree(phi) - 1;  // degree as exponent
  for (std::size_t i = poly_degree(a); i-- > dphi;) {
    Integer c = a[i];
    if (c != 0) {
      a[i] = 0;
      for (std::size_t j = 0; j < dphi; ++j) a[i - dphi + j] -= c * phi[j];
    }
    if (i == dphi) break;
  }
  a.resize(dphi);
}

struct ConductorData {
  std::uint32_t phi;
  Poly phi_poly;  // Phi_N, monic, length phi + 1
};

std::map<std::uint32_t, ConductorData>& conductor_cache() {
  static std::map<std::uint32_t, ConductorData> cache;
  return cache;
}
std::mutex cache_mutex;

const ConductorData& conductor_data_locked(std::uint32_t N) {
  auto& cache = conductor_cache();
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;

  // x^N - 1 divided by the product of Phi_d over proper divisors d of N.
  Poly acc = {Integer(1)};  // running product of proper-divisor factors
  for (auto d : divisors(N)) {
    if (d == N) continue;
    const Poly& f = conductor_data_locked(static_cast<std::uint32_t>(d)).phi_poly;
    Poly prod(acc.size() + f.size() - 1, Integer(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      for (std::size_t j = 0; j < f.size(); ++j) prod[i + j] += acc[i] * f[j];
    }
    acc = std::move(prod);
  }
  Poly xn1(N + 1, Integer(0));
  xn1[0] = -1;
  xn1[N] = 1;
  ConductorData data;
  data.phi = static_cast<std::uint32_t>(euler_phi(N));
  data.phi_poly = poly_divexact_monic(std::move(xn1), acc);
  if (poly_degree(data.phi_poly) != data.phi + 1)
    throw std::logic_error("cyclotomic_polynomial: degree mismatch");
  return cache.emplace(N, std::move(data)).first->second;
}

const ConductorData& conductor_data(std::uint32_t N) {
  if (N == 0) throw std::invalid_argument("conductor must be positive");
  std::lock_guard<std::mutex> lock(cache_mutex);
  return conductor_data_locked(N);
}

Integer content_with(const std::vector<Integer>& v, const Integer& seed) {
  Integer g = seed;
  for (const auto& c : v) {
    if (c == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::uint32_t lcm_u32(std::uint32_t a, std::uint32_t b) {
  std::uint64_t l = std::lcm<std::uint64_t>(a, b);
  if (l > 0xffffffffu) throw std::overflow_error("conductor lcm overflow");
  return static_cast<std::uint32_t>(l);
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("euler_phi(0)");
  std::uint64_t result = n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisors(0)");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t N) {
  return conductor_data(N).phi_poly;
}

CycloNumber::CycloNumber(const Rational& r) : n_(1), den_(r.den()), num_(1, r.num()) {}

CycloNumber::CycloNumber(std::uint32_t n, std::vector<Integer> num, Integer den)
    : n_(n), den_(std::move(den)), num_(std::move(num)) {
  normalize();
}

void CycloNumber::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 0) throw std::logic_error("CycloNumber: zero denominator");
  Integer g = content_with(num_, den_);
  if (g > 1) {
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    for (auto& c : num_)
      if (c != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  bool zero = std::all_of(num_.begin(), num_.end(), [](const Integer& c) { return c == 0; });
  if (zero) den_ = 1;
}

CycloNumber CycloNumber::from_monomials(std::uint32_t N, const std::vector<std::pair<std::int64_t, Rational>>& terms) {
  const auto& data = conductor_data(N);
  Integer den(1);
  for (const auto& [e, w] : terms) {
    (void)e;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.den().get_mpz_t());
  }
  std::vector<Integer> acc(N, Integer(0));
  for (const auto& [e, w] : terms) {
    std::int64_t r = e % static_cast<std::int64_t>(N);
    if (r < 0) r += N;
    acc[static_cast<std::size_t>(r)] += w.num() * (den / w.den());
  }
  poly_mod_monic(acc, data.phi_poly);
  return CycloNumber(N, std::move(acc), std::move(den));
}

std::vector<Rational> CycloNumber::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (std::size_t k = 0; k < num_.size(); ++k) out.push_back(coeff(k));
  return out;
}

bool CycloNumber::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& c) { return c == 0; });
}

bool CycloNumber::is_rational() const {
  for (std::size_t k = 1; k < num_.size(); ++k)
    if (num_[k] != 0) return false;
  return true;
}

Rational CycloNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("CycloNumber: not rational");
  return Rational(num_[0], den_);
}

CycloNumber CycloNumber::promoted(std::uint32_t M) const {
  if (M == n_) return *this;
  if (M % n_ != 0) throw std::invalid_argument("CycloNumber::promoted: conductor does not divide target");
  const auto& data = conductor_data(M);
  std::uint32_t stride = M / n_;
  std::vector<Integer> acc(M, Integer(0));
  for (std::size_t k = 0; k < num_.size(); ++k) {
    if (num_[k] == 0) continue;
    acc[(k * stride) % M] += num_[k];
  }
  poly_mod_monic(acc, data.phi_poly);
  return CycloNumber(M, std::move(acc), den_);
}

CycloNumber CycloNumber::conj() const {
  std::vector<Integer> acc(n_, Integer(0));
  for (std::size_t k = 0; k < num_.size(); ++k) {
    if (num_[k] == 0) continue;
    acc[(n_ - k) % n_] += num_[k];
  }
  poly_mod_monic(acc, conductor_data(n_).phi_poly);
  return CycloNumber(n_, std::move(acc), den_);
}

CycloNumber CycloNumber::operator-() const {
  std::vector<Integer> num = num_;
  for (auto& c : num) c = -c;
  return CycloNumber(n_, std::move(num), den_);
}

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
  if (a.n_ != b.n_) {
    std::uint32_t l = lcm_u32(a.n_, b.n_);
    return a.promoted(l) + b.promoted(l);
  }
  Integer den;
  mpz_lcm(den.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
  Integer fa = den / a.den_, fb = den / b.den_;
  std::vector<Integer> num(a.num_.size());
  for (std::size_t k = 0; k < num.size(); ++k) num[k] = a.num_[k] * fa + b.num_[k] * fb;
  return CycloNumber(a.n_, std::move(num), std::move(den));
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) { return a + (-b); }

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  if (a.n_ != b.n_) {
    std::uint32_t l = lcm_u32(a.n_, b.n_);
    return a.promoted(l) * b.promoted(l);
  }
  const auto& data = conductor_data(a.n_);
  std::size_t phi = a.num_.size();
  std::vector<Integer> acc(std::max<std::size_t>(2 * phi, 1), Integer(0));
  for (std::size_t i = 0; i < phi; ++i) {
    if (a.num_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (b.num_[j] == 0) continue;
      acc[i + j] += a.num_[i] * b.num_[j];
    }
  }
  // fold x^N = 1 before dividing so the degree is below N
  if (acc.size() > a.n_) {
    for (std::size_t e = acc.size(); e-- > a.n_;) {
      if (acc[e] != 0) acc[e - a.n_] += acc[e];
    }
    acc.resize(a.n_);
  }
  if (acc.size() >= data.phi_poly.size() - 1) poly_mod_monic(acc, data.phi_poly);
  acc.resize(phi);
  return CycloNumber(a.n_, std::move(acc), a.den_ * b.den_);
}

CycloNumber operator*(const Rational& r, const CycloNumber& a) {
  std::vector<Integer> num(a.num_.size());
  for (std::size_t k = 0; k < num.size(); ++k) num[k] = a.num_[k] * r.num();
  return CycloNumber(a.n_, std::move(num), a.den_ * r.den());
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw std::domain_error("CycloNumber: inverse of zero");
  if (is_rational()) return CycloNumber(rational_value().inverse()).promoted(n_);

  using QPoly = std::vector<Rational>;
  auto deg = [](const QPoly& p) {
    std::size_t d = p.size();
    while (d > 0 && p[d - 1].is_zero()) --d;
    return d;
  };
  const auto& phi = conductor_data(n_).phi_poly;
  QPoly r0(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) r0[i] = Rational(phi[i]);
  QPoly r1(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) r1[i] = coeff(i);
  QPoly s0 = {Rational(0)}, s1 = {Rational(1)};  // Bezout coefficients of the value

  while (true) {
    std::size_t d1 = deg(r1);
    if (d1 == 0) throw std::logic_error("CycloNumber::inverse: zero remainder before unit");
    if (d1 == 1) break;  // r1 is a nonzero constant
    std::size_t d0 = deg(r0);
    // r0 <- r0 mod r1, accumulating the same operations on s0
    while (d0 >= d1) {
      Rational f = r0[d0 - 1] / r1[d1 - 1];
      std::size_t shift = d0 - d1;
      for (std::size_t j = 0; j < d1; ++j) r0[shift + j] -= f * r1[j];
      if (s0.size() < s1.size() + shift) s0.resize(s1.size() + shift, Rational(0));
      for (std::size_t j = 0; j < s1.size(); ++j) s0[shift + j] -= f * s1[j];
      std::size_t nd = d0 - 1;
      while (nd > 0 && r0[nd - 1].is_zero()) --nd;
      d0 = nd;
      if (d0 < d1) break;
    }
    std::swap(r0, r1);
    std::swap(s0, s1);
  }
  Rational unit = r1[0];
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (!s1[i].is_zero()) terms.emplace_back(static_cast<std::int64_t>(i), s1[i] / unit);
  }
  return from_monomials(n_, terms);
}

CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.n_ != b.n_) {
    std::uint32_t l = lcm_u32(a.n_, b.n_);
    return a.promoted(l) == b.promoted(l);
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

std::complex<double> CycloNumber::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  double den = den_.get_d();
  for (std::size_t k = 0; k < num_.size(); ++k) {
    if (num_[k] == 0) continue;
    double c = num_[k].get_d() / den;
    double arg = kTau * static_cast<double>(k) / static_cast<double>(n_);
    acc += c * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return acc;
}

CycloNumber root_of_unity(std::uint32_t N, std::int64_t e) {
  return CycloNumber::from_monomials(N, {{e, Rational(1)}});
}

CycloNumber root_of_unity(const Rational& t) {
  std::uint32_t q = static_cast<std::uint32_t>(to_int64(t.den()));
  return root_of_unity(q, to_int64(t.num()) % static_cast<std::int64_t>(q));
}

CosSin cos_sin_of_rational_angle(const Rational& t) {
  std::int64_t q64 = to_int64(t.den());
  std::uint32_t N = lcm_u32(static_cast<std::uint32_t>(q64), 4);
  std::int64_t e = to_int64(t.num()) * (N / q64);
  Rational half(1, 2);
  CycloNumber z = root_of_unity(N, e);
  CycloNumber zinv = root_of_unity(N, -e);
  CycloNumber cos = half * (z + zinv);
  // 1/(2i) = zeta_4^3 / 2
  CycloNumber sin = half * ((z - zinv) * root_of_unity(N, 3 * (N / 4)));
  return {cos, sin};
}

CycloNumber pow(const CycloNumber& base, std::uint64_t exp) {
  CycloNumber result(Rational(1));
  if (exp == 0) return result;
  result = result.promoted(base.conductor());
  CycloNumber sq = base;
  std::uint64_t e = exp;
  while (true) {
    if (e & 1) result *= sq;
    e >>= 1;
    if (e == 0) break;
    sq *= sq;
  }
  return result;
}

std::string to_string(const CycloNumber& v) {
  if (v.is_rational()) {
    return v.rational_value().str();
  }
  std::string s = "zeta" + std::to_string(v.conductor()) + ":[";
  bool first = true;
  for (std::size_t k = 0; k < v.degree(); ++k) {
    const Rational c = v.coeff(k);
    if (c.is_zero()) {
      continue;
    }
    if (!first) {
      s += ", ";
    }
    first = false;
    s += c.str() + " e" + std::to_string(k);
  }
  s += "]";
  return s;
}

}  // namespace heatsum
