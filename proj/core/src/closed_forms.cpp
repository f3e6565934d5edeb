#include "heatsum/closed_forms.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace heatsum {

namespace {

constexpr std::uint32_t kConductorLimit = 1u << 20;

Integer binom(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return Integer(0);
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer pow2(std::int64_t n) {
  Integer r(1);
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  return r;
}

/// e^{2*pi*i*t} monomial exponent at conductor N: t*N mod N, for den(t) | N.
std::int64_t turn_exponent(const Rational& t, std::uint32_t N) {
  Integer e = t.num() * Integer(static_cast<unsigned long>(N) / t.den().get_ui());
  Integer r, q(static_cast<unsigned long>(N));
  mpz_fdiv_r(r.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
  return static_cast<std::int64_t>(r.get_si());
}

/// sum of coeff * e^{2*pi*i*turns} over the given terms, assembled at the
/// least common conductor with a single cyclotomic reduction.
CycloNumber phase_weighted_sum(const std::vector<std::pair<Rational, Rational>>& terms) {
  Integer L(1);
  for (const auto& [t, c] : terms) {
    (void)c;
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.den().get_mpz_t());
  }
  if (!L.fits_ulong_p() || L.get_ui() > kConductorLimit) {
    throw std::invalid_argument("closed_forms: phase denominator exceeds the conductor limit");
  }
  const auto N = static_cast<std::uint32_t>(L.get_ui());
  std::vector<std::pair<std::int64_t, Rational>> monomials;
  monomials.reserve(terms.size());
  for (const auto& [t, c] : terms) {
    monomials.emplace_back(turn_exponent(t, N), c);
  }
  return CycloNumber::from_monomials(N, monomials);
}

/// sum_{k: |km| <= nu, km+nu even} e^{-2*pi*i*k*beta} C(nu, (km+nu)/2) --
/// the single-coordinate mode sum shared by the power-sum evaluators.
CycloNumber binomial_mode_sum(std::int64_t m, std::int64_t nu, const Rational& beta) {
  std::vector<std::pair<Rational, Rational>> terms;
  for (std::int64_t k = -(nu / m); k <= nu / m; ++k) {
    const std::int64_t km = k * m;
    if (((km + nu) % 2) != 0) continue;
    terms.emplace_back(Rational(-k) * beta, Rational(binom(nu, (km + nu) / 2)));
  }
  return phase_weighted_sum(terms);
}

void require_positive(std::int64_t v, const char* what) {
  if (v < 1) throw std::invalid_argument(std::string("closed_forms: ") + what + " must be positive");
}

double binom_d(std::int64_t n, std::int64_t k) { return binom(n, k).get_d(); }

}  // namespace

Rational AffineTurns::eval(const std::vector<std::int64_t>& idx) const {
  Rational v = constant;
  for (std::size_t i = 0; i < coeff.size() && i < idx.size(); ++i) {
    v = v + coeff[i] * Rational(idx[i]);
  }
  return v;
}

CycloNumber brute_force_trig_sum(const TrigSumSpec& spec) {
  const std::size_t dim = spec.lo.size();
  if (spec.hi.size() != dim) {
    throw std::invalid_argument("closed_forms: index range bounds have mismatched lengths");
  }
  if (spec.weight_turns.coeff.size() > dim) {
    throw std::invalid_argument("closed_forms: phase weight refers to more indices than declared");
  }
  if (spec.outer_power < 0) {
    throw std::invalid_argument("closed_forms: outer power must be nonnegative");
  }
  for (const auto& atom : spec.atoms) {
    for (const auto& f : atom.factors) {
      if (f.power < 0) throw std::invalid_argument("closed_forms: factor power must be nonnegative");
      if (f.angle.coeff.size() > dim) {
        throw std::invalid_argument("closed_forms: factor angle refers to more indices than declared");
      }
    }
  }
  if (spec.character && spec.character->index >= dim) {
    throw std::invalid_argument("closed_forms: character index out of range");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (spec.lo[i] > spec.hi[i]) return CycloNumber(Rational(0));
  }

  CycloNumber total(Rational(0));
  std::vector<std::int64_t> idx(spec.lo);
  while (true) {
    CycloNumber term = root_of_unity(spec.weight_turns.eval(idx));
    bool zero = false;
    if (spec.character) {
      CycloNumber cv = character_eval(spec.character->chi, idx[spec.character->index]);
      if (cv.is_zero()) {
        zero = true;
      } else {
        if (spec.character->conjugate) cv = cv.conj();
        term *= cv;
      }
    }
    if (!zero) {
      CycloNumber atom_sum(Rational(0));
      for (const auto& atom : spec.atoms) {
        CycloNumber av(Rational(1));
        for (const auto& f : atom.factors) {
          const CosSin cs = cos_sin_of_rational_angle(f.angle.eval(idx));
          av *= pow(f.kind == TrigKind::Cos ? cs.cos : cs.sin,
                    static_cast<std::uint64_t>(f.power));
        }
        atom_sum += av;
      }
      term *= pow(atom_sum, static_cast<std::uint64_t>(spec.outer_power));
      total += term;
    }
    std::size_t j = 0;
    for (; j < dim; ++j) {
      if (idx[j] < spec.hi[j]) {
        ++idx[j];
        break;
      }
      idx[j] = spec.lo[j];
    }
    if (j == dim) break;
  }
  return total;
}

CycloNumber cos_power_sum(std::int64_t m, std::int64_t n, const Rational& beta, TrigKind kind) {
  require_positive(m, "modulus m");
  require_positive(n, "power n");
  const Rational shifted = kind == TrigKind::Sin ? beta - Rational(m, 4) : beta;
  return Rational(Integer(m), pow2(n)) * binomial_mode_sum(m, n, shifted);
}

CycloNumber additive_twisted_cos_sum(std::int64_t m, std::int64_t b, std::int64_t r,
                                     const Rational& alpha_over_pi, std::int64_t n,
                                     TrigKind kind) {
  require_positive(n, "power n");
  if (m < 2) throw std::invalid_argument("closed_forms: modulus m must be at least 2");
  if (b < 1 || b >= m) throw std::invalid_argument("closed_forms: frequency b must lie in {1,...,m-1}");
  if (r < 1 || r >= m) throw std::invalid_argument("closed_forms: character index r must lie in {1,...,m-1}");
  std::vector<std::pair<Rational, Rational>> terms;
  for (std::int64_t d = 0; d <= n; ++d) {
    if ((((2 * d - n) * b - r) % m) != 0) continue;
    Rational turns = alpha_over_pi * Rational(n - 2 * d, 2);
    if (kind == TrigKind::Sin) turns = turns + Rational(2 * d - n, 4);
    terms.emplace_back(turns, Rational(binom(n, d)));
  }
  return Rational(Integer(m), pow2(n)) * phase_weighted_sum(terms);
}

FloatComplex additive_twisted_cos_sum_approx(std::int64_t m, std::int64_t b, std::int64_t r,
                                             double alpha, std::int64_t n, TrigKind kind) {
  require_positive(n, "power n");
  if (m < 2) throw std::invalid_argument("closed_forms: modulus m must be at least 2");
  if (b < 1 || b >= m) throw std::invalid_argument("closed_forms: frequency b must lie in {1,...,m-1}");
  if (r < 1 || r >= m) throw std::invalid_argument("closed_forms: character index r must lie in {1,...,m-1}");
  FloatComplex acc(0.0, 0.0);
  for (std::int64_t d = 0; d <= n; ++d) {
    if ((((2 * d - n) * b - r) % m) != 0) continue;
    double phase = alpha * static_cast<double>(n - 2 * d);
    if (kind == TrigKind::Sin) phase -= std::numbers::pi / 2.0 * static_cast<double>(n - 2 * d);
    acc += binom_d(n, d) * std::polar(1.0, phase);
  }
  const double scale = static_cast<double>(m) * std::exp2(-static_cast<double>(n));
  return scale * acc;
}

Rational alternating_cos_S(std::int64_t n, std::int64_t m) {
  require_positive(n, "power parameter n");
  require_positive(m, "length m");
  const std::int64_t period = 2 * (m + 1);
  Integer acc(0);
  std::int64_t d0 = (n + m + 1) % period;
  for (std::int64_t d = d0; d <= 2 * n; d += period) {
    acc += binom(2 * n, d);
  }
  return Rational(-1, 2) + Rational(Integer(m + 1), pow2(2 * n)) * Rational(acc);
}

CycloNumber multiplicative_twisted_sum(const DirichletCharacter& chi, std::int64_t b,
                                       const Rational& alpha_over_pi, std::int64_t n,
                                       TrigKind kind) {
  require_positive(n, "power n");
  const auto m = static_cast<std::int64_t>(chi.modulus);
  if (m < 2) throw std::invalid_argument("closed_forms: character modulus must be at least 2");
  if (!is_primitive(chi)) {
    throw std::invalid_argument("closed_forms: the Dirichlet character must be primitive");
  }
  if (b < 1 || b >= m) throw std::invalid_argument("closed_forms: frequency b must lie in {1,...,m-1}");
  CycloNumber acc(Rational(0));
  for (std::int64_t d = 0; d <= n; ++d) {
    const CycloNumber cv = character_eval(chi, (2 * d - n) * b);
    if (cv.is_zero()) continue;
    Rational turns = alpha_over_pi * Rational(n - 2 * d, 2);
    if (kind == TrigKind::Sin) turns = turns + Rational(2 * d - n, 4);
    acc += Rational(binom(n, d)) * (cv * root_of_unity(turns));
  }
  return Rational(Integer(m), pow2(n)) * (acc / gauss_sum(chi));
}

FloatComplex multiplicative_twisted_sum_approx(const DirichletCharacter& chi, std::int64_t b,
                                               double alpha, std::int64_t n, TrigKind kind) {
  require_positive(n, "power n");
  const auto m = static_cast<std::int64_t>(chi.modulus);
  if (m < 2) throw std::invalid_argument("closed_forms: character modulus must be at least 2");
  if (!is_primitive(chi)) {
    throw std::invalid_argument("closed_forms: the Dirichlet character must be primitive");
  }
  if (b < 1 || b >= m) throw std::invalid_argument("closed_forms: frequency b must lie in {1,...,m-1}");
  FloatComplex acc(0.0, 0.0);
  for (std::int64_t d = 0; d <= n; ++d) {
    const CycloNumber cv = character_eval(chi, (2 * d - n) * b);
    if (cv.is_zero()) continue;
    double phase = alpha * static_cast<double>(n - 2 * d);
    if (kind == TrigKind::Sin) phase -= std::numbers::pi / 2.0 * static_cast<double>(n - 2 * d);
    acc += binom_d(n, d) * cv.to_complex() * std::polar(1.0, phase);
  }
  const double scale = static_cast<double>(m) * std::exp2(-static_cast<double>(n));
  return scale * acc / gauss_sum(chi).to_complex();
}

CycloNumber product_cos_power_sum(const std::vector<std::int64_t>& m, std::int64_t n,
                                  const std::vector<Rational>& beta) {
  if (m.empty()) throw std::invalid_argument("closed_forms: at least one modulus is required");
  if (beta.size() != m.size()) {
    throw std::invalid_argument("closed_forms: moduli and shifts have mismatched lengths");
  }
  require_positive(n, "power n");
  CycloNumber acc(Rational(1));
  for (std::size_t j = 0; j < m.size(); ++j) {
    acc *= cos_power_sum(m[j], n, beta[j]);
  }
  return acc;
}

CycloNumber linear_combo_power_sum(std::int64_t m1, std::int64_t m2, std::int64_t n,
                                   const Rational& beta1, const Rational& beta2) {
  require_positive(m1, "modulus m1");
  require_positive(m2, "modulus m2");
  require_positive(n, "power n");
  CycloNumber acc(Rational(0));
  for (std::int64_t c = 0; c <= n; ++c) {
    acc += Rational(binom(n, c)) *
           (binomial_mode_sum(m1, c, beta1) * binomial_mode_sum(m2, n - c, beta2));
  }
  return Rational(Integer(m1) * Integer(m2), pow2(n)) * acc;
}

CycloNumber mixed_cos_sin_2d(std::int64_t m1, std::int64_t m2, std::int64_t a,
                             std::int64_t b, std::int64_t k,
                             const Rational& alpha1_over_pi,
                             const Rational& alpha2_over_pi) {
  require_positive(m1, "modulus m1");
  require_positive(m2, "modulus m2");
  require_positive(a, "frequency a");
  require_positive(b, "frequency b");
  require_positive(k, "power k");
  std::vector<std::pair<Rational, Rational>> terms;
  for (std::int64_t d1 = 0; d1 <= k; ++d1) {
    const std::int64_t t1 = a * (2 * d1 - k);
    if ((t1 % m1) != 0) continue;
    if (((t1 / m1) % 2) == 0) continue;  // the quotient must be odd
    for (std::int64_t d2 = 0; d2 <= k; ++d2) {
      const std::int64_t t2 = b * (2 * d2 - k);
      if ((t2 % m2) != 0) continue;
      const Rational turns = Rational(2 * d2 - k, 4) -
                             alpha1_over_pi * Rational(d1) - alpha2_over_pi * Rational(d2);
      terms.emplace_back(turns, Rational(Integer(binom(k, d1) * binom(k, d2))));
    }
  }
  const CycloNumber front = root_of_unity((alpha1_over_pi + alpha2_over_pi) * Rational(k, 2));
  return Rational(Integer(2) * Integer(m1) * Integer(m2), pow2(2 * k)) *
         (front * phase_weighted_sum(terms));
}

FloatComplex mixed_cos_sin_2d_approx(std::int64_t m1, std::int64_t m2, std::int64_t a,
                                     std::int64_t b, std::int64_t k,
                                     double alpha1, double alpha2) {
  require_positive(m1, "modulus m1");
  require_positive(m2, "modulus m2");
  require_positive(a, "frequency a");
  require_positive(b, "frequency b");
  require_positive(k, "power k");
  const double half_pi = std::numbers::pi / 2.0;
  FloatComplex acc(0.0, 0.0);
  for (std::int64_t d1 = 0; d1 <= k; ++d1) {
    const std::int64_t t1 = a * (2 * d1 - k);
    if ((t1 % m1) != 0) continue;
    if (((t1 / m1) % 2) == 0) continue;
    for (std::int64_t d2 = 0; d2 <= k; ++d2) {
      const std::int64_t t2 = b * (2 * d2 - k);
      if ((t2 % m2) != 0) continue;
      const double phase = half_pi * static_cast<double>(2 * d2 - k) -
                           2.0 * (alpha1 * static_cast<double>(d1) + alpha2 * static_cast<double>(d2));
      acc += binom_d(k, d1) * binom_d(k, d2) * std::polar(1.0, phase);
    }
  }
  const double scale = 2.0 * static_cast<double>(m1) * static_cast<double>(m2) *
                       std::exp2(-2.0 * static_cast<double>(k));
  return scale * std::polar(1.0, static_cast<double>(k) * (alpha1 + alpha2)) * acc;
}

namespace {

void require_nonnegative(std::int64_t v, const char* what) {
  if (v < 0) {
    throw std::invalid_argument(std::string(what) + " must be >= 0");
  }
}

TrigFactor trig(TrigKind kind, std::int64_t power, Rational constant,
                std::vector<Rational> coeff) {
  TrigFactor f;
  f.kind = kind;
  f.power = power;
  f.angle.constant = std::move(constant);
  f.angle.coeff = std::move(coeff);
  return f;
}

}  // namespace

TrigSumSpec cos_power_sum_spec(std::int64_t m, std::int64_t n, const Rational& beta,
                               TrigKind kind) {
  require_positive(m, "modulus m");
  require_nonnegative(n, "power n");
  TrigSumSpec spec;
  spec.lo = {0};
  spec.hi = {m - 1};
  // summand: trig^n(2*pi*(j + beta)/m)
  spec.atoms = {TrigAtom{{trig(kind, n, beta / Rational(m), {Rational(1, m)})}}};
  return spec;
}

TrigSumSpec additive_twisted_cos_sum_spec(std::int64_t m, std::int64_t b, std::int64_t r,
                                          const Rational& alpha_over_pi, std::int64_t n,
                                          TrigKind kind) {
  require_positive(m, "modulus m");
  require_nonnegative(n, "power n");
  TrigSumSpec spec;
  spec.lo = {0};
  spec.hi = {m - 1};
  // weight: e^{2*pi*i*j*r/m}; summand: trig^n(2*pi*j*b/m + alpha)
  spec.weight_turns.coeff = {Rational(r, m)};
  spec.atoms = {
      TrigAtom{{trig(kind, n, alpha_over_pi / Rational(2), {Rational(b, m)})}}};
  return spec;
}

TrigSumSpec alternating_cos_S_spec(std::int64_t n, std::int64_t m) {
  require_nonnegative(n, "power parameter n");
  require_positive(m, "length m");
  TrigSumSpec spec;
  spec.lo = {1};
  spec.hi = {m};
  // weight: (-1)^k; summand: cos^{2n}(k*pi/(2m+2))
  spec.weight_turns.coeff = {Rational(1, 2)};
  spec.atoms = {
      TrigAtom{{trig(TrigKind::Cos, 2 * n, Rational(0), {Rational(1, 4 * (m + 1))})}}};
  return spec;
}

TrigSumSpec multiplicative_twisted_sum_spec(const DirichletCharacter& chi, std::int64_t b,
                                            const Rational& alpha_over_pi, std::int64_t n,
                                            TrigKind kind) {
  require_nonnegative(n, "power n");
  const std::int64_t m = chi.modulus;
  TrigSumSpec spec;
  spec.lo = {0};
  spec.hi = {m - 1};
  // weight: conj(chi(j)); summand: trig^n(2*pi*j*b/m + alpha)
  spec.character = CharacterFactor{chi, 0, true};
  spec.atoms = {
      TrigAtom{{trig(kind, n, alpha_over_pi / Rational(2), {Rational(b, m)})}}};
  return spec;
}

TrigSumSpec product_cos_power_sum_spec(const std::vector<std::int64_t>& m, std::int64_t n,
                                       const std::vector<Rational>& beta) {
  if (m.size() != beta.size()) {
    throw std::invalid_argument("product sum: m and beta sizes differ");
  }
  require_nonnegative(n, "power n");
  const std::size_t d = m.size();
  TrigSumSpec spec;
  TrigAtom atom;
  for (std::size_t j = 0; j < d; ++j) {
    require_positive(m[j], "modulus m_j");
    spec.lo.push_back(0);
    spec.hi.push_back(m[j] - 1);
    // factor j: cos^n(2*pi*(l_j + beta_j)/m_j)
    std::vector<Rational> coeff(d, Rational(0));
    coeff[j] = Rational(1, m[j]);
    atom.factors.push_back(trig(TrigKind::Cos, n, beta[j] / Rational(m[j]), std::move(coeff)));
  }
  spec.atoms = {std::move(atom)};
  return spec;
}

TrigSumSpec linear_combo_power_sum_spec(std::int64_t m1, std::int64_t m2, std::int64_t n,
                                        const Rational& beta1, const Rational& beta2) {
  require_positive(m1, "modulus m1");
  require_positive(m2, "modulus m2");
  require_nonnegative(n, "power n");
  TrigSumSpec spec;
  spec.lo = {0, 0};
  spec.hi = {m1 - 1, m2 - 1};
  // summand: (cos(2*pi*(a + beta1)/m1) + cos(2*pi*(b + beta2)/m2))^n
  spec.atoms = {
      TrigAtom{{trig(TrigKind::Cos, 1, beta1 / Rational(m1), {Rational(1, m1), Rational(0)})}},
      TrigAtom{{trig(TrigKind::Cos, 1, beta2 / Rational(m2), {Rational(0), Rational(1, m2)})}}};
  spec.outer_power = n;
  return spec;
}

TrigSumSpec mixed_cos_sin_2d_spec(std::int64_t m1, std::int64_t m2, std::int64_t a,
                                  std::int64_t b, std::int64_t k,
                                  const Rational& alpha1_over_pi,
                                  const Rational& alpha2_over_pi) {
  require_positive(m1, "modulus m1");
  require_positive(m2, "modulus m2");
  require_nonnegative(k, "power k");
  TrigSumSpec spec;
  spec.lo = {0, 0};
  spec.hi = {2 * m1 - 1, m2 - 1};
  // weight: (-1)^j; summand: cos^k(pi*j*a/m1 + alpha1) sin^k(2*pi*l*b/m2 + alpha2)
  spec.weight_turns.coeff = {Rational(1, 2), Rational(0)};
  spec.atoms = {TrigAtom{
      {trig(TrigKind::Cos, k, alpha1_over_pi / Rational(2), {Rational(a, 2 * m1), Rational(0)}),
       trig(TrigKind::Sin, k, alpha2_over_pi / Rational(2), {Rational(0), Rational(b, m2)})}}};
  return spec;
}

}  // namespace heatsum
