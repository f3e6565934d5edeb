#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "heatsum/graph_model.hpp"

namespace heatsum {

/// Sparse Laurent polynomial in d variables over Q. Keys are exponent
/// tuples; only nonzero coefficients are stored.
struct SparseLaurent {
  int d = 0;
  std::map<LatticeVector, Rational> terms;
};

/// P_S(t) = sum_s pi(s) t^s.
SparseLaurent step_polynomial(int d, const StepDistribution& steps);

SparseLaurent laurent_mul(const SparseLaurent& a, const SparseLaurent& b);

/// P^n by binary exponentiation. n = 0 gives the constant 1.
SparseLaurent laurent_power(const SparseLaurent& p, std::uint64_t n);

Rational coefficient(const SparseLaurent& p, const LatticeVector& e);

/// n-step transition probability K_Y(x, 0; n) on the lattice Z^d: the
/// coefficient of t^x in P_S^n. Exact; returns 0 immediately when some
/// |x_j| exceeds n * max_s |s_j|.
Rational lattice_kernel(int d, const StepDistribution& steps, const LatticeVector& x, std::int64_t n);

/// Closed form for d = 1, S = {+b, -b} with weights 1/2:
/// 2^-n binom(n, (x + bn)/(2b)) when 2b divides x + bn and |x| <= bn,
/// otherwise 0.
Rational lattice_kernel_closed_form_d1(std::int64_t b, std::int64_t x, std::int64_t n);

/// Dense table of all n-step kernel values over the full support box,
/// scaled to one integer denominator: K_Y(v, 0; n) = coeff[index] / den.
/// Preferred over repeated lattice_kernel calls when many values of the
/// same power are needed (periodization sums, traces).
struct LatticeKernelTable {
  int d = 0;
  LatticeVector lo;                  // per-coordinate lower bound
  std::vector<std::int64_t> size;    // per-coordinate extent
  std::vector<std::int64_t> stride;  // row-major strides
  std::vector<Integer> coeff;
  Integer den = 1;

  /// Flat index of v; false when v lies outside the box.
  bool index_of(const LatticeVector& v, std::int64_t* out) const;
  /// K_Y(v, 0; n) as an exact rational; zero outside the box.
  Rational value(const LatticeVector& v) const;
};

/// Builds the table by iterated convolution against the |S|-term step
/// kernel (cost n * box * |S|), with coefficients scaled by
/// den = (lcm of weight denominators)^n.
LatticeKernelTable lattice_kernel_table(int d, const StepDistribution& steps, std::int64_t n);

}  // namespace heatsum
