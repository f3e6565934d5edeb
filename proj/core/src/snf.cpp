#include "heatsum/snf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace heatsum {

IntMatrix IntMatrix::zero(int r, int c) {
  if (r < 0 || c < 0) {
    throw std::invalid_argument("IntMatrix: negative dimension");
  }
  IntMatrix m;
  m.rows = r;
  m.cols = c;
  m.entries.assign(static_cast<std::size_t>(r), std::vector<Integer>(static_cast<std::size_t>(c), Integer(0)));
  return m;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m = zero(n, n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 1;
  }
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) {
    throw std::invalid_argument("matmul: dimension mismatch");
  }
  IntMatrix out = IntMatrix::zero(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) {
        continue;
      }
      for (int j = 0; j < b.cols; ++j) {
        out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return out;
}

std::vector<Integer> mat_vec(const IntMatrix& a, const std::vector<Integer>& x) {
  if (static_cast<int>(x.size()) != a.cols) {
    throw std::invalid_argument("mat_vec: dimension mismatch");
  }
  std::vector<Integer> out(static_cast<std::size_t>(a.rows), Integer(0));
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) {
      out[static_cast<std::size_t>(i)] += a.at(i, j) * x[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows != a.cols) {
    throw std::invalid_argument("determinant: matrix not square");
  }
  const int n = a.rows;
  if (n == 0) {
    return 1;
  }
  auto m = a.entries;
  bool negate = false;
  Integer prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i) {
        if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) {
        return 0;
      }
      std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(pivot)]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer t = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                        m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                        m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
      }
    }
    prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
  }
  Integer det = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
  return negate ? Integer(-det) : det;
}

namespace {

// row_i += f * row_p, applied to m.
void row_axpy(IntMatrix& m, int i, int p, const Integer& f) {
  for (int j = 0; j < m.cols; ++j) {
    m.at(i, j) += f * m.at(p, j);
  }
}

// col_j += f * col_p, applied to m.
void col_axpy(IntMatrix& m, int j, int p, const Integer& f) {
  for (int i = 0; i < m.rows; ++i) {
    m.at(i, j) += f * m.at(i, p);
  }
}

void swap_rows(IntMatrix& m, int i, int j) {
  if (i != j) {
    std::swap(m.entries[static_cast<std::size_t>(i)], m.entries[static_cast<std::size_t>(j)]);
  }
}

void swap_cols(IntMatrix& m, int i, int j) {
  if (i != j) {
    for (int r = 0; r < m.rows; ++r) {
      std::swap(m.at(r, i), m.at(r, j));
    }
  }
}

Integer floor_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  SnfResult res{IntMatrix::identity(a.rows), IntMatrix::identity(a.cols), a};
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  IntMatrix& d = res.d;
  const int t = std::min(a.rows, a.cols);

  for (int p = 0; p < t; ++p) {
    bool exhausted = false;
    for (;;) {
      // Bring the smallest nonzero entry of the trailing block to (p, p).
      int bi = -1;
      int bj = -1;
      for (int i = p; i < d.rows; ++i) {
        for (int j = p; j < d.cols; ++j) {
          if (d.at(i, j) != 0 &&
              (bi < 0 || mpz_cmpabs(d.at(i, j).get_mpz_t(), d.at(bi, bj).get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi < 0) {
        exhausted = true;  // trailing block is identically zero
        break;
      }
      swap_rows(d, p, bi);
      swap_rows(u, p, bi);
      swap_cols(d, p, bj);
      swap_cols(v, p, bj);

      // Reduce the pivot column and row; leftover remainders trigger a
      // fresh pivot search (they are strictly smaller than the pivot).
      bool dirty = false;
      for (int i = p + 1; i < d.rows; ++i) {
        if (d.at(i, p) != 0) {
          const Integer f = -floor_quotient(d.at(i, p), d.at(p, p));
          row_axpy(d, i, p, f);
          row_axpy(u, i, p, f);
          if (d.at(i, p) != 0) {
            dirty = true;
          }
        }
      }
      for (int j = p + 1; j < d.cols; ++j) {
        if (d.at(p, j) != 0) {
          const Integer f = -floor_quotient(d.at(p, j), d.at(p, p));
          col_axpy(d, j, p, f);
          col_axpy(v, j, p, f);
          if (d.at(p, j) != 0) {
            dirty = true;
          }
        }
      }
      if (dirty) {
        continue;
      }

      // Pivot row/column are clear. If the pivot fails to divide some
      // trailing entry, fold that row into the pivot row and re-reduce.
      bool divides_all = true;
      for (int i = p + 1; i < d.rows && divides_all; ++i) {
        for (int j = p + 1; j < d.cols && divides_all; ++j) {
          if (d.at(i, j) % d.at(p, p) != 0) {
            row_axpy(d, p, i, Integer(1));
            row_axpy(u, p, i, Integer(1));
            divides_all = false;
          }
        }
      }
      if (divides_all) {
        break;
      }
    }
    if (exhausted) {
      break;
    }
  }

  for (int p = 0; p < t; ++p) {
    if (d.at(p, p) < 0) {
      for (int j = 0; j < d.cols; ++j) {
        d.at(p, j) = -d.at(p, j);
      }
      for (int j = 0; j < u.cols; ++j) {
        u.at(p, j) = -u.at(p, j);
      }
    }
  }
  return res;
}

std::vector<Integer> invariant_factors(const SnfResult& s) {
  const int t = std::min(s.d.rows, s.d.cols);
  std::vector<Integer> q;
  q.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    q.push_back(s.d.at(i, i));
  }
  return q;
}

std::vector<LatticeVector> solve_torus_congruences(const IntMatrix& a, const std::vector<std::int64_t>& m) {
  const int d = a.rows;
  const int l = a.cols;
  if (static_cast<int>(m.size()) != d) {
    throw std::invalid_argument("solve_torus_congruences: modulus tuple length mismatch");
  }
  for (std::int64_t mi : m) {
    if (mi <= 0) {
      throw std::invalid_argument("solve_torus_congruences: moduli must be positive");
    }
  }
  const SnfResult snf = smith_normal_form(a);
  const int t = std::min(d, l);

  // Per-coordinate residue choices from c_i z_i = 0 (mod m_i).
  std::vector<std::vector<std::int64_t>> choices(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    if (i >= t) {
      choices[static_cast<std::size_t>(i)] = {0};  // no basis vector for this coordinate
      continue;
    }
    Integer row_sum = 0;
    for (int j = 0; j < d; ++j) {
      row_sum += snf.u.at(i, j);
    }
    const Integer ci = snf.d.at(i, i) * row_sum;
    const Integer mi = m[static_cast<std::size_t>(i)];
    Integer cred;
    mpz_fdiv_r(cred.get_mpz_t(), ci.get_mpz_t(), mi.get_mpz_t());
    const Integer g = gcd(cred, mi);  // gcd(0, mi) == mi: everything solves
    const std::int64_t count = to_int64(g);
    const std::int64_t stride = to_int64(mi / g);
    for (std::int64_t k = 0; k < count; ++k) {
      choices[static_cast<std::size_t>(i)].push_back(k * stride);
    }
  }

  std::set<LatticeVector> accepted;
  LatticeVector z(static_cast<std::size_t>(d), 0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    for (int i = 0; i < d; ++i) {
      z[static_cast<std::size_t>(i)] =
          choices[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
    }
    // Map back through the basis change and keep only genuine solutions.
    std::vector<Integer> zhat(static_cast<std::size_t>(l), Integer(0));
    for (int i = 0; i < t; ++i) {
      zhat[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
    }
    const std::vector<Integer> image = mat_vec(a, mat_vec(snf.v, zhat));
    bool member = true;
    for (int i = 0; i < d && member; ++i) {
      member = mpz_divisible_ui_p(image[static_cast<std::size_t>(i)].get_mpz_t(),
                                  static_cast<unsigned long>(m[static_cast<std::size_t>(i)])) != 0;
    }
    if (member) {
      accepted.insert(z);
    }

    int pos = d - 1;
    while (pos >= 0) {
      if (++idx[static_cast<std::size_t>(pos)] < choices[static_cast<std::size_t>(pos)].size()) {
        break;
      }
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) {
      break;
    }
  }
  return {accepted.begin(), accepted.end()};
}

}  // namespace heatsum
