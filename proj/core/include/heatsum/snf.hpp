#pragma once

#include <cstdint>
#include <vector>

#include "heatsum/graph_model.hpp"
#include "heatsum/rational.hpp"

namespace heatsum {

/// Dense integer matrix with arbitrary-precision entries.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<Integer>> entries;  // rows x cols

  static IntMatrix zero(int r, int c);
  static IntMatrix identity(int n);

  Integer& at(int i, int j) { return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const Integer& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

bool operator==(const IntMatrix& a, const IntMatrix& b);

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

std::vector<Integer> mat_vec(const IntMatrix& a, const std::vector<Integer>& x);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& a);

/// Smith normal form data: u * a * v = d with u, v unimodular and d
/// diagonal, nonnegative, and divisibility-chained.
struct SnfResult {
  IntMatrix u;  // rows x rows
  IntMatrix v;  // cols x cols
  IntMatrix d;  // rows x cols, diagonal
};

SnfResult smith_normal_form(const IntMatrix& a);

/// The diagonal of d, length min(rows, cols): q_1 | q_2 | ... with any
/// zeros trailing.
std::vector<Integer> invariant_factors(const SnfResult& s);

/// Residue classes z with a-weighted coordinates annihilated modulo m:
/// diagonalize a as u*a*v = d, form c_i = q_i * (row sum of u), solve each
/// c_i z_i = 0 (mod m_i) per coordinate, and keep only those candidate
/// tuples whose preimage sum(z_i v_i) genuinely maps into m Z^d under a.
/// Output vectors have length a.rows; when a has fewer columns than rows
/// the surplus coordinates have no basis vector and are reported as 0.
/// Deduplicated and sorted.
std::vector<LatticeVector> solve_torus_congruences(const IntMatrix& a, const std::vector<std::int64_t>& m);

}  // namespace heatsum
