#include "heatsum/spectral.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "heatsum/cyclotomic.hpp"
#include "heatsum/lattice_kernel.hpp"
#include "heatsum/torus_kernel.hpp"

namespace heatsum {

namespace {

constexpr std::int64_t kConductorLimit = 1 << 20;

void require_valid(const TorusSpec& spec) {
  const ValidationReport report = validate_spec(spec);
  if (!report.valid) {
    throw SpecError(report);
  }
}

void require_dim(const TorusSpec& spec, const LatticeVector& v, const char* what) {
  if (static_cast<int>(v.size()) != spec.d) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

// Winding fraction of chi_n at x: sum_j (n_j + beta_j) x_j / m_j, so that
// chi_n(x) = exp(2 pi i * turns).
Rational character_turns(const TorusSpec& spec, const LatticeVector& nIdx, const LatticeVector& x) {
  Rational t(0);
  for (std::size_t j = 0; j < static_cast<std::size_t>(spec.d); ++j) {
    if (x[j] == 0) {
      continue;
    }
    t += (Rational(Integer(nIdx[j])) + spec.beta[j]) *
         Rational(Integer(x[j]), Integer(spec.m[j]));
  }
  return t;
}

double character_turns_f(const TorusSpec& spec, const LatticeVector& nIdx, const LatticeVector& x) {
  double t = 0.0;
  for (std::size_t j = 0; j < static_cast<std::size_t>(spec.d); ++j) {
    t += (static_cast<double>(nIdx[j]) + spec.beta_f[j]) * static_cast<double>(x[j]) /
         static_cast<double>(spec.m[j]);
  }
  return t;
}

FloatComplex unit_phase(double turns) {
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

FloatComplex cpow_n(FloatComplex base, std::int64_t e) {
  FloatComplex result(1.0, 0.0);
  while (e > 0) {
    if (e & 1) {
      result *= base;
    }
    e >>= 1;
    if (e > 0) {
      base *= base;
    }
  }
  return result;
}

// Smallest usable conductor for this mode: the lcm of the denominators of
// the step windings, which divides lcm_j(m_j * den(beta_j)).
CycloNumber eigenvalue_exact(const TorusSpec& spec, const LatticeVector& nIdx) {
  std::vector<Rational> turns;
  turns.reserve(spec.steps.steps.size());
  Integer N(1);
  for (const Step& s : spec.steps.steps) {
    turns.push_back(character_turns(spec, nIdx, s.offset));
    N = lcm(N, turns.back().den());
  }
  const std::int64_t N64 = to_int64(N);
  if (N64 > kConductorLimit) {
    throw std::overflow_error("eigenvalue: conductor too large");
  }
  std::vector<std::pair<std::int64_t, Rational>> monomials;
  monomials.reserve(turns.size());
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const std::int64_t den = to_int64(turns[i].den());
    monomials.emplace_back(to_int64(turns[i].num()) * (N64 / den),
                           spec.steps.steps[i].weight);
  }
  return CycloNumber::from_monomials(static_cast<std::uint32_t>(N64), monomials);
}

FloatComplex eigenvalue_float(const TorusSpec& spec, const LatticeVector& nIdx) {
  FloatComplex acc(0.0, 0.0);
  for (const Step& s : spec.steps.steps) {
    acc += s.weight.to_double() * unit_phase(character_turns_f(spec, nIdx, s.offset));
  }
  return acc;
}

// Common conductor for the whole Fourier sum.
std::int64_t sum_conductor(const TorusSpec& spec) {
  Integer N(1);
  for (std::size_t j = 0; j < static_cast<std::size_t>(spec.d); ++j) {
    N = lcm(N, Integer(spec.m[j]) * spec.beta[j].den());
  }
  const std::int64_t N64 = to_int64(N);
  if (N64 > kConductorLimit) {
    throw std::overflow_error("spectral sum: conductor too large");
  }
  return N64;
}

CycloNumber spectral_kernel_exact(const TorusSpec& spec, const LatticeVector& x,
                                  const LatticeVector& y, std::int64_t p) {
  const int d = spec.d;
  const std::int64_t N64 = sum_conductor(spec);
  const Integer N(N64);

  LatticeVector delta(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    delta[static_cast<std::size_t>(j)] =
        x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
  }

  // Accumulate the modes in the cyclic ring Z[z]/(z^N - 1): each mode
  // contributes lambda^p shifted by the monomial chi_n(x - y). A single
  // reduction into the field happens at the end.
  const std::int64_t M = total_volume(spec);
  std::vector<Rational> slots(static_cast<std::size_t>(N64));
  for (std::int64_t idx = 0; idx < M; ++idx) {
    const LatticeVector nIdx = residue_of_index(spec, idx);
    const CycloNumber lam = pow(eigenvalue_exact(spec, nIdx), static_cast<std::uint64_t>(p));
    const Rational shift_t = character_turns(spec, nIdx, delta);
    const Integer shift_num = shift_t.num() * (N / shift_t.den());
    Integer sh;
    mpz_fdiv_r(sh.get_mpz_t(), shift_num.get_mpz_t(), N.get_mpz_t());
    const std::int64_t shift = to_int64(sh);
    const std::int64_t nc = static_cast<std::int64_t>(lam.conductor());
    if (N64 % nc != 0) {
      throw std::logic_error("spectral_kernel: eigenvalue conductor outside the sum field");
    }
    const std::int64_t stretch = N64 / nc;
    for (std::size_t k = 0; k < lam.degree(); ++k) {
      const Rational c = lam.coeff(k);
      if (c.is_zero()) {
        continue;
      }
      const std::int64_t slot = (static_cast<std::int64_t>(k) * stretch + shift) % N64;
      slots[static_cast<std::size_t>(slot)] += c;
    }
  }

  std::vector<std::pair<std::int64_t, Rational>> monomials;
  for (std::int64_t e = 0; e < N64; ++e) {
    if (!slots[static_cast<std::size_t>(e)].is_zero()) {
      monomials.emplace_back(e, slots[static_cast<std::size_t>(e)]);
    }
  }
  const CycloNumber total = CycloNumber::from_monomials(static_cast<std::uint32_t>(N64), monomials);
  return Rational(Integer(1), Integer(M)) * total;
}

FloatComplex spectral_kernel_float(const TorusSpec& spec, const LatticeVector& x,
                                   const LatticeVector& y, std::int64_t p) {
  const int d = spec.d;
  LatticeVector delta(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    delta[static_cast<std::size_t>(j)] =
        x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
  }
  const std::int64_t M = total_volume(spec);
  FloatComplex acc(0.0, 0.0);
  for (std::int64_t idx = 0; idx < M; ++idx) {
    const LatticeVector nIdx = residue_of_index(spec, idx);
    acc += cpow_n(eigenvalue_float(spec, nIdx), p) *
           unit_phase(character_turns_f(spec, nIdx, delta));
  }
  return acc / static_cast<double>(M);
}

}  // namespace

KernelValue character_value(const TorusSpec& spec, const LatticeVector& nIdx,
                            const LatticeVector& x) {
  require_valid(spec);
  require_dim(spec, nIdx, "character_value nIdx");
  require_dim(spec, x, "character_value x");
  if (spec.mode == NumericMode::exact) {
    return root_of_unity(character_turns(spec, nIdx, x));
  }
  return unit_phase(character_turns_f(spec, nIdx, x));
}

KernelValue eigenvalue(const TorusSpec& spec, const LatticeVector& nIdx) {
  require_valid(spec);
  require_dim(spec, nIdx, "eigenvalue nIdx");
  if (spec.mode == NumericMode::exact) {
    return eigenvalue_exact(spec, nIdx);
  }
  return eigenvalue_float(spec, nIdx);
}

std::vector<SpectralDatum> eigenvalues(const TorusSpec& spec) {
  require_valid(spec);
  const std::int64_t M = total_volume(spec);
  std::vector<SpectralDatum> out;
  out.reserve(static_cast<std::size_t>(M));
  for (std::int64_t idx = 0; idx < M; ++idx) {
    LatticeVector nIdx = residue_of_index(spec, idx);
    KernelValue lam = (spec.mode == NumericMode::exact)
                          ? KernelValue(eigenvalue_exact(spec, nIdx))
                          : KernelValue(eigenvalue_float(spec, nIdx));
    out.push_back({std::move(nIdx), std::move(lam)});
  }
  return out;
}

KernelValue spectral_kernel(const TorusSpec& spec, const LatticeVector& x,
                            const LatticeVector& y, std::int64_t n) {
  require_valid(spec);
  require_dim(spec, x, "spectral_kernel x");
  require_dim(spec, y, "spectral_kernel y");
  if (n < 0) {
    throw std::invalid_argument("spectral_kernel: negative step count");
  }
  if (spec.mode == NumericMode::exact) {
    return spectral_kernel_exact(spec, x, y, n);
  }
  return spectral_kernel_float(spec, x, y, n);
}

IdentityReport verify_main_identity(const TorusSpec& spec, const LatticeVector& x,
                                    const LatticeVector& y, std::int64_t n) {
  require_valid(spec);
  if (spec.mode != NumericMode::exact) {
    throw std::invalid_argument("verify_main_identity: exact mode required");
  }
  IdentityReport report;
  report.lhs = images_kernel(spec, x, y, n);
  report.rhs = spectral_kernel(spec, x, y, n);
  const CycloNumber& lhs = exact_value(report.lhs);
  const CycloNumber& rhs = exact_value(report.rhs);
  report.equal = (lhs == rhs);
  std::ostringstream os;
  if (report.equal) {
    os << "translate sum and Fourier sum agree: " << to_string(lhs);
  } else {
    os << "MISMATCH translate sum = " << to_string(lhs) << " (conductor " << lhs.conductor()
       << ") vs Fourier sum = " << to_string(rhs) << " (conductor " << rhs.conductor()
       << "), difference " << to_string(lhs - rhs);
  }
  report.detail = os.str();
  return report;
}

KernelValue spectral_power_sum(const TorusSpec& spec, std::int64_t p) {
  require_valid(spec);
  if (p < 1) {
    throw std::invalid_argument("spectral_power_sum: step count must be positive");
  }
  const int d = spec.d;
  const std::int64_t M = total_volume(spec);
  const LatticeKernelTable table = lattice_kernel_table(d, spec.steps, p);

  // Translate range: k_j * m_j must stay inside the support box.
  LatticeVector klo(static_cast<std::size_t>(d));
  LatticeVector khi(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const std::int64_t r = p * support_radius(spec.steps, j);
    const std::int64_t mj = spec.m[static_cast<std::size_t>(j)];
    khi[static_cast<std::size_t>(j)] = r / mj;
    klo[static_cast<std::size_t>(j)] = -khi[static_cast<std::size_t>(j)];
  }

  const bool exact = spec.mode == NumericMode::exact;
  CycloNumber acc_exact;
  FloatComplex acc_float(0.0, 0.0);
  LatticeVector k = klo;
  LatticeVector point(static_cast<std::size_t>(d));
  for (;;) {
    for (int j = 0; j < d; ++j) {
      point[static_cast<std::size_t>(j)] =
          k[static_cast<std::size_t>(j)] * spec.m[static_cast<std::size_t>(j)];
    }
    const Rational value = table.value(point);
    if (!value.is_zero()) {
      if (exact) {
        Rational turns(0);
        for (int j = 0; j < d; ++j) {
          if (k[static_cast<std::size_t>(j)] != 0) {
            turns += Rational(Integer(k[static_cast<std::size_t>(j)])) *
                     spec.beta[static_cast<std::size_t>(j)];
          }
        }
        acc_exact += value * root_of_unity(-turns);
      } else {
        double turns = 0.0;
        for (int j = 0; j < d; ++j) {
          turns += static_cast<double>(k[static_cast<std::size_t>(j)]) *
                   spec.beta_f[static_cast<std::size_t>(j)];
        }
        acc_float += value.to_double() * unit_phase(-turns);
      }
    }
    int pos = d - 1;
    while (pos >= 0) {
      if (++k[static_cast<std::size_t>(pos)] <= khi[static_cast<std::size_t>(pos)]) {
        break;
      }
      k[static_cast<std::size_t>(pos)] = klo[static_cast<std::size_t>(pos)];
      --pos;
    }
    if (pos < 0) {
      break;
    }
  }
  if (exact) {
    return Rational(Integer(M)) * acc_exact;
  }
  return static_cast<double>(M) * acc_float;
}

IntegralityReport galois_integrality_check(const TorusSpec& spec, std::int64_t n) {
  require_valid(spec);
  if (spec.mode != NumericMode::exact) {
    throw std::invalid_argument("galois_integrality_check: exact mode required");
  }
  if (!has_uniform_weights(spec.steps)) {
    throw std::invalid_argument("galois_integrality_check: weights must be uniform");
  }
  if (!is_untwisted(spec)) {
    throw std::invalid_argument("galois_integrality_check: twist must be zero");
  }
  if (n < 1) {
    throw std::invalid_argument("galois_integrality_check: step count must be positive");
  }

  const KernelValue sum = spectral_power_sum(spec, n);
  const CycloNumber& cyclo = exact_value(sum);
  const Rational scale = pow(Rational(static_cast<long>(spec.steps.steps.size())),
                             static_cast<long>(n));
  const CycloNumber a = scale * cyclo;

  IntegralityReport report;
  report.raw = a;
  std::ostringstream os;
  if (!a.is_rational()) {
    report.integral = false;
    os << "count is not rational: " << to_string(a);
  } else {
    const Rational value = a.rational_value();
    if (value.is_integer()) {
      report.integral = true;
      report.value = value.num();
      os << "closed-walk count = " << value.str();
    } else {
      report.integral = false;
      os << "count is a non-integral rational: " << value.str();
    }
  }
  report.detail = os.str();
  return report;
}

}  // namespace heatsum
