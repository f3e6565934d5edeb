#include "heatsum/lattice_kernel.hpp"

#include <cstdlib>
#include <stdexcept>

#include "heatsum/combinatorics.hpp"

namespace heatsum {

SparseLaurent step_polynomial(int d, const StepDistribution& steps) {
  SparseLaurent p;
  p.d = d;
  for (const Step& s : steps.steps) {
    if (static_cast<int>(s.offset.size()) != d) {
      throw std::invalid_argument("step_polynomial: offset dimension mismatch");
    }
    p.terms[s.offset] += s.weight;
  }
  for (auto it = p.terms.begin(); it != p.terms.end();) {
    if (it->second.is_zero()) {
      it = p.terms.erase(it);
    } else {
      ++it;
    }
  }
  return p;
}

SparseLaurent laurent_mul(const SparseLaurent& a, const SparseLaurent& b) {
  if (a.d != b.d) {
    throw std::invalid_argument("laurent_mul: dimension mismatch");
  }
  SparseLaurent out;
  out.d = a.d;
  LatticeVector e(static_cast<std::size_t>(a.d), 0);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      for (int j = 0; j < a.d; ++j) {
        e[static_cast<std::size_t>(j)] =
            ea[static_cast<std::size_t>(j)] + eb[static_cast<std::size_t>(j)];
      }
      out.terms[e] += ca * cb;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second.is_zero()) {
      it = out.terms.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

SparseLaurent laurent_power(const SparseLaurent& p, std::uint64_t n) {
  SparseLaurent acc;
  acc.d = p.d;
  acc.terms[LatticeVector(static_cast<std::size_t>(p.d), 0)] = Rational(1);
  SparseLaurent base = p;
  while (n > 0) {
    if (n & 1) {
      acc = laurent_mul(acc, base);
    }
    n >>= 1;
    if (n > 0) {
      base = laurent_mul(base, base);
    }
  }
  return acc;
}

Rational coefficient(const SparseLaurent& p, const LatticeVector& e) {
  auto it = p.terms.find(e);
  return it == p.terms.end() ? Rational(0) : it->second;
}

Rational lattice_kernel(int d, const StepDistribution& steps, const LatticeVector& x, std::int64_t n) {
  if (n < 0) {
    throw std::invalid_argument("lattice_kernel: negative step count");
  }
  if (static_cast<int>(x.size()) != d) {
    throw std::invalid_argument("lattice_kernel: point dimension mismatch");
  }
  for (int j = 0; j < d; ++j) {
    const std::int64_t radius = support_radius(steps, j);
    if (std::llabs(x[static_cast<std::size_t>(j)]) > n * radius) {
      return Rational(0);
    }
  }
  const SparseLaurent pn = laurent_power(step_polynomial(d, steps), static_cast<std::uint64_t>(n));
  return coefficient(pn, x);
}

Rational lattice_kernel_closed_form_d1(std::int64_t b, std::int64_t x, std::int64_t n) {
  if (b <= 0) {
    throw std::invalid_argument("lattice_kernel_closed_form_d1: b must be positive");
  }
  if (n < 0) {
    throw std::invalid_argument("lattice_kernel_closed_form_d1: negative step count");
  }
  if (std::llabs(x) > b * n) {
    return Rational(0);
  }
  const std::int64_t num = x + b * n;
  if (num % (2 * b) != 0) {
    return Rational(0);
  }
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  return Rational(binomial(n, num / (2 * b)), den);
}

bool LatticeKernelTable::index_of(const LatticeVector& v, std::int64_t* out) const {
  std::int64_t idx = 0;
  for (int j = 0; j < d; ++j) {
    const std::int64_t off = v[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
    if (off < 0 || off >= size[static_cast<std::size_t>(j)]) {
      return false;
    }
    idx += off * stride[static_cast<std::size_t>(j)];
  }
  *out = idx;
  return true;
}

Rational LatticeKernelTable::value(const LatticeVector& v) const {
  if (static_cast<int>(v.size()) != d) {
    throw std::invalid_argument("LatticeKernelTable::value: point dimension mismatch");
  }
  std::int64_t idx = 0;
  if (!index_of(v, &idx)) {
    return Rational(0);
  }
  return Rational(coeff[static_cast<std::size_t>(idx)], den);
}

LatticeKernelTable lattice_kernel_table(int d, const StepDistribution& steps, std::int64_t n) {
  if (n < 0) {
    throw std::invalid_argument("lattice_kernel_table: negative step count");
  }
  LatticeKernelTable p;
  p.d = d;
  p.lo.assign(static_cast<std::size_t>(d), 0);
  p.size.assign(static_cast<std::size_t>(d), 1);
  p.stride.assign(static_cast<std::size_t>(d), 1);
  std::int64_t total = 1;
  for (int j = 0; j < d; ++j) {
    const std::int64_t r = n * support_radius(steps, j);
    p.lo[static_cast<std::size_t>(j)] = -r;
    p.size[static_cast<std::size_t>(j)] = 2 * r + 1;
    if (total > (1LL << 31) / p.size[static_cast<std::size_t>(j)]) {
      throw std::overflow_error("lattice_kernel_table: support box too large");
    }
    total *= p.size[static_cast<std::size_t>(j)];
  }
  for (int j = d - 1; j >= 0; --j) {
    p.stride[static_cast<std::size_t>(j)] =
        (j + 1 < d) ? p.stride[static_cast<std::size_t>(j + 1)] * p.size[static_cast<std::size_t>(j + 1)]
                    : 1;
  }

  // Integer-scaled step weights over the lcm denominator.
  Integer den_one = 1;
  for (const Step& s : steps.steps) {
    den_one = lcm(den_one, s.weight.den());
  }
  struct ScaledStep {
    LatticeVector offset;
    Integer coeff;
  };
  std::vector<ScaledStep> scaled;
  scaled.reserve(steps.steps.size());
  for (const Step& s : steps.steps) {
    scaled.push_back({s.offset, s.weight.num() * (den_one / s.weight.den())});
  }

  std::vector<Integer> cur(static_cast<std::size_t>(total), Integer(0));
  std::int64_t origin = 0;
  for (int j = 0; j < d; ++j) {
    origin += (-p.lo[static_cast<std::size_t>(j)]) * p.stride[static_cast<std::size_t>(j)];
  }
  cur[static_cast<std::size_t>(origin)] = 1;

  LatticeVector v(static_cast<std::size_t>(d), 0);
  LatticeVector src(static_cast<std::size_t>(d), 0);
  std::vector<Integer> next(static_cast<std::size_t>(total));
  for (std::int64_t step_no = 0; step_no < n; ++step_no) {
    std::fill(next.begin(), next.end(), Integer(0));
    // Only cells reached so far are touched, so the full-box sweep costs
    // one sign test per empty cell.
    for (std::int64_t flat = 0; flat < total; ++flat) {
      if (cur[static_cast<std::size_t>(flat)] == 0) {
        continue;
      }
      std::int64_t rem = flat;
      for (int j = 0; j < d; ++j) {
        v[static_cast<std::size_t>(j)] =
            rem / p.stride[static_cast<std::size_t>(j)] + p.lo[static_cast<std::size_t>(j)];
        rem %= p.stride[static_cast<std::size_t>(j)];
      }
      for (const ScaledStep& s : scaled) {
        for (int j = 0; j < d; ++j) {
          src[static_cast<std::size_t>(j)] =
              v[static_cast<std::size_t>(j)] + s.offset[static_cast<std::size_t>(j)];
        }
        std::int64_t tgt = 0;
        if (p.index_of(src, &tgt)) {
          next[static_cast<std::size_t>(tgt)] += s.coeff * cur[static_cast<std::size_t>(flat)];
        }
      }
    }
    cur.swap(next);
  }
  p.coeff = std::move(cur);
  Integer den = 1;
  mpz_pow_ui(den.get_mpz_t(), den_one.get_mpz_t(), static_cast<unsigned long>(n));
  p.den = den;
  return p;
}

}  // namespace heatsum
