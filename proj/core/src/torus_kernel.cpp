#include "heatsum/torus_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "heatsum/combinatorics.hpp"
#include "heatsum/lattice_kernel.hpp"
#include "heatsum/snf.hpp"

namespace heatsum {

namespace {

// ---------------------------------------------------------------------
// Scalar policies: one code path for exact (cyclotomic) and floating
// arithmetic. carry_phase(k, sign) = exp(sign * 2 pi i * k.beta).
// ---------------------------------------------------------------------

struct ExactOps {
  using Scalar = CycloNumber;
  const TorusSpec* spec;

  Scalar zero() const { return CycloNumber(); }
  Scalar one() const { return CycloNumber(Rational(1)); }
  Scalar from_rational(const Rational& r) const { return CycloNumber(r); }
  Scalar carry_phase(const LatticeVector& k, int sign) const {
    Rational turns(0);
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (k[j] != 0) {
        turns += Rational(k[j]) * spec->beta[j];
      }
    }
    if (turns.is_zero()) {
      return one();
    }
    if (sign < 0) {
      turns = -turns;
    }
    return root_of_unity(turns);
  }
};

struct FloatOps {
  using Scalar = FloatComplex;
  const TorusSpec* spec;

  Scalar zero() const { return {0.0, 0.0}; }
  Scalar one() const { return {1.0, 0.0}; }
  Scalar from_rational(const Rational& r) const { return {r.to_double(), 0.0}; }
  Scalar carry_phase(const LatticeVector& k, int sign) const {
    double turns = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      turns += static_cast<double>(k[j]) * spec->beta_f[j];
    }
    return std::polar(1.0, static_cast<double>(sign) * 2.0 * std::numbers::pi * turns);
  }
};

// ---------------------------------------------------------------------
// images kernel
// ---------------------------------------------------------------------

template <typename Ops>
typename Ops::Scalar images_impl(const TorusSpec& spec, const LatticeVector& x, const LatticeVector& y,
                                 std::int64_t n, const Ops& ops) {
  const int d = spec.d;
  LatticeVector delta(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    delta[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
  }

  // Per-coordinate translate ranges from the support box.
  LatticeVector klo(static_cast<std::size_t>(d));
  LatticeVector khi(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const std::int64_t r = n * support_radius(spec.steps, j);
    const std::int64_t mj = spec.m[static_cast<std::size_t>(j)];
    const std::int64_t dj = delta[static_cast<std::size_t>(j)];
    klo[static_cast<std::size_t>(j)] = -floor_div(Integer(r + dj), Integer(mj));
    khi[static_cast<std::size_t>(j)] = floor_div(Integer(r - dj), Integer(mj));
    if (klo[static_cast<std::size_t>(j)] > khi[static_cast<std::size_t>(j)]) {
      return ops.zero();
    }
  }

  const LatticeKernelTable pn = lattice_kernel_table(d, spec.steps, n);
  const Rational inv_den(Integer(1), pn.den);

  typename Ops::Scalar acc = ops.zero();
  LatticeVector k = klo;
  LatticeVector point(static_cast<std::size_t>(d));
  for (;;) {
    for (int j = 0; j < d; ++j) {
      point[static_cast<std::size_t>(j)] =
          delta[static_cast<std::size_t>(j)] +
          k[static_cast<std::size_t>(j)] * spec.m[static_cast<std::size_t>(j)];
    }
    std::int64_t flat = 0;
    if (pn.index_of(point, &flat) && pn.coeff[static_cast<std::size_t>(flat)] != 0) {
      const Rational value = Rational(pn.coeff[static_cast<std::size_t>(flat)]) * inv_den;
      acc += ops.from_rational(value) * ops.carry_phase(k, -1);
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
  return acc;
}

// ---------------------------------------------------------------------
// state evolution oracle
// ---------------------------------------------------------------------

template <typename Ops>
std::vector<typename Ops::Scalar> evolve_impl(const TorusSpec& spec, const LatticeVector& y,
                                              std::int64_t n, const Ops& ops) {
  using Scalar = typename Ops::Scalar;
  const int d = spec.d;
  const std::int64_t M = total_volume(spec);

  // Gather table: for target residue x and step s, the source residue of
  // x - s together with the weight times the carry's character factor.
  struct Edge {
    std::int64_t src;
    Scalar factor;
  };
  const std::size_t ns = spec.steps.steps.size();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(M) * ns);
  LatticeVector r(static_cast<std::size_t>(d));
  LatticeVector carry(static_cast<std::size_t>(d));
  for (std::int64_t xi = 0; xi < M; ++xi) {
    const LatticeVector x = residue_of_index(spec, xi);
    for (const Step& s : spec.steps.steps) {
      for (int j = 0; j < d; ++j) {
        const std::int64_t mj = spec.m[static_cast<std::size_t>(j)];
        const std::int64_t raw =
            x[static_cast<std::size_t>(j)] - s.offset[static_cast<std::size_t>(j)];
        const std::int64_t c = floor_div(Integer(raw), Integer(mj));
        carry[static_cast<std::size_t>(j)] = c;
        r[static_cast<std::size_t>(j)] = raw - c * mj;
      }
      edges.push_back(
          {residue_index(spec, r), ops.from_rational(s.weight) * ops.carry_phase(carry, +1)});
    }
  }

  std::vector<Scalar> cur(static_cast<std::size_t>(M), ops.zero());
  cur[static_cast<std::size_t>(residue_index(spec, y))] = ops.one();
  std::vector<Scalar> next(static_cast<std::size_t>(M), ops.zero());
  for (std::int64_t step_no = 0; step_no < n; ++step_no) {
    for (std::int64_t xi = 0; xi < M; ++xi) {
      Scalar acc = ops.zero();
      const Edge* base = edges.data() + static_cast<std::size_t>(xi) * ns;
      for (std::size_t e = 0; e < ns; ++e) {
        acc += base[e].factor * cur[static_cast<std::size_t>(base[e].src)];
      }
      next[static_cast<std::size_t>(xi)] = acc;
    }
    cur.swap(next);
  }
  return cur;
}

// ---------------------------------------------------------------------
// Smith-decomposition route
// ---------------------------------------------------------------------

struct StepPairing {
  IntMatrix mat;                 // d x l, columns are pair representatives
  std::vector<Rational> weights; // weight of each pair (one sign)
  int l = 0;
};

StepPairing pair_steps(const TorusSpec& spec) {
  const int d = spec.d;
  std::map<LatticeVector, Rational> remaining;
  for (const Step& s : spec.steps.steps) {
    bool zero = std::all_of(s.offset.begin(), s.offset.end(), [](std::int64_t v) { return v == 0; });
    if (zero) {
      throw NotCoherentError(NotCoherentError::Reason::zero_step,
                             "step set contains the zero offset");
    }
    remaining.emplace(s.offset, s.weight);
  }
  std::vector<LatticeVector> reps;
  std::vector<Rational> weights;
  for (const Step& s : spec.steps.steps) {
    auto it = remaining.find(s.offset);
    if (it == remaining.end()) {
      continue;  // already consumed as a negation
    }
    LatticeVector neg(s.offset.size());
    for (std::size_t j = 0; j < s.offset.size(); ++j) {
      neg[j] = -s.offset[j];
    }
    auto nit = remaining.find(neg);
    if (nit == remaining.end() || nit->second != it->second) {
      throw NotCoherentError(NotCoherentError::Reason::pairing,
                             "steps do not split into opposite pairs of equal weight");
    }
    reps.push_back(s.offset);
    weights.push_back(it->second);
    remaining.erase(neg);
    remaining.erase(s.offset);
  }
  StepPairing out;
  out.l = static_cast<int>(reps.size());
  out.weights = std::move(weights);
  out.mat = IntMatrix::zero(d, out.l);
  for (int i = 0; i < out.l; ++i) {
    for (int j = 0; j < d; ++j) {
      out.mat.at(j, i) = reps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return out;
}

std::string fmt_vec(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) {
      os << ',';
    }
    os << v[i];
  }
  os << ')';
  return os.str();
}

// Periods mu_i: coordinate i of a signed step-count vector may shift by
// mu_i without changing anything, provided mu_i * (column i) vanishes
// modulo m. Paired coordinates use mu_i = m_i; surplus columns (more step
// pairs than torus dimensions) must vanish modulo m outright, mu_i = 1.
std::vector<std::int64_t> coherent_periods(const StepPairing& p, const std::vector<std::int64_t>& m) {
  const int d = static_cast<int>(m.size());
  const int l = p.l;
  const int paired = std::min(d, l);
  std::vector<std::int64_t> mu(static_cast<std::size_t>(l), 1);
  for (int i = 0; i < l; ++i) {
    const std::int64_t mui = (i < paired) ? m[static_cast<std::size_t>(i)] : 1;
    mu[static_cast<std::size_t>(i)] = mui;
    for (int j = 0; j < d; ++j) {
      const Integer prod = Integer(mui) * p.mat.at(j, i);
      if (prod % Integer(m[static_cast<std::size_t>(j)]) != 0) {
        std::ostringstream os;
        os << "column " << i << " scaled by its period " << mui
           << " is not congruent to zero modulo the torus (coordinate " << j << ")";
        throw NotCoherentError(NotCoherentError::Reason::period_condition, os.str());
      }
    }
  }
  return mu;
}

// All residue classes of signed step-count vectors w in prod [0, mu_i)
// with mat * w = target (mod m).
std::vector<LatticeVector> box_solutions(const IntMatrix& mat, const std::vector<std::int64_t>& m,
                                         const std::vector<std::int64_t>& mu,
                                         const std::vector<Integer>& target) {
  const int d = mat.rows;
  const int l = mat.cols;
  std::vector<LatticeVector> out;
  LatticeVector w(static_cast<std::size_t>(l), 0);
  for (;;) {
    bool ok = true;
    for (int j = 0; j < d && ok; ++j) {
      Integer acc = -target[static_cast<std::size_t>(j)];
      for (int i = 0; i < l; ++i) {
        acc += mat.at(j, i) * Integer(w[static_cast<std::size_t>(i)]);
      }
      ok = acc % Integer(m[static_cast<std::size_t>(j)]) == 0;
    }
    if (ok) {
      out.push_back(w);
    }
    int pos = l - 1;
    while (pos >= 0) {
      if (++w[static_cast<std::size_t>(pos)] < mu[static_cast<std::size_t>(pos)]) {
        break;
      }
      w[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) {
      break;
    }
  }
  return out;
}

// Cross-check the congruence solver's class list against direct
// enumeration; both must describe the same set of residue classes.
void validate_solver_classes(const StepPairing& p, const std::vector<std::int64_t>& m,
                             const std::vector<std::int64_t>& mu,
                             const std::vector<LatticeVector>& direct) {
  const int d = static_cast<int>(m.size());
  const int l = p.l;
  const int paired = std::min(d, l);
  const SnfResult snf = smith_normal_form(p.mat);
  const std::vector<LatticeVector> solved = solve_torus_congruences(p.mat, m);
  std::set<LatticeVector> mapped;
  for (const LatticeVector& z : solved) {
    std::vector<Integer> zhat(static_cast<std::size_t>(l), Integer(0));
    for (int i = 0; i < paired; ++i) {
      zhat[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
    }
    const std::vector<Integer> w = mat_vec(snf.v, zhat);
    LatticeVector reduced(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
      Integer rem;
      mpz_fdiv_r(rem.get_mpz_t(), w[static_cast<std::size_t>(i)].get_mpz_t(),
                 Integer(mu[static_cast<std::size_t>(i)]).get_mpz_t());
      reduced[static_cast<std::size_t>(i)] = to_int64(rem);
    }
    mapped.insert(reduced);
  }
  const std::set<LatticeVector> expect(direct.begin(), direct.end());
  if (mapped != expect) {
    std::ostringstream os;
    os << "congruence solver produced " << mapped.size() << " classes, direct enumeration "
       << expect.size() << ";";
    for (const auto& c : expect) {
      if (!mapped.count(c)) {
        os << " missing " << fmt_vec(c);
      }
    }
    for (const auto& c : mapped) {
      if (!expect.count(c)) {
        os << " spurious " << fmt_vec(c);
      }
    }
    throw NotCoherentError(NotCoherentError::Reason::class_mismatch, os.str());
  }
}

template <typename Ops>
typename Ops::Scalar snf_impl(const TorusSpec& spec, const LatticeVector& x, std::int64_t n,
                              const Ops& ops) {
  const int d = spec.d;
  const StepPairing pairing = pair_steps(spec);
  const int l = pairing.l;
  const std::vector<std::int64_t> mu = coherent_periods(pairing, spec.m);

  // Homogeneous residue classes, validated against the solver route.
  const std::vector<Integer> zero_target(static_cast<std::size_t>(d), Integer(0));
  const std::vector<LatticeVector> classes = box_solutions(pairing.mat, spec.m, mu, zero_target);
  validate_solver_classes(pairing, spec.m, mu, classes);

  // Particular solution of mat * w = x (mod m) in the period box.
  std::vector<Integer> target(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    target[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
  }
  const std::vector<LatticeVector> particular = box_solutions(pairing.mat, spec.m, mu, target);
  if (particular.empty()) {
    return ops.zero();  // no walk reaches x in any number of steps
  }
  const LatticeVector& w0 = particular.front();

  typename Ops::Scalar acc = ops.zero();

  // Iterate over all compositions of n into l nonnegative parts.
  std::vector<std::int64_t> parts(static_cast<std::size_t>(l), 0);
  LatticeVector k(static_cast<std::size_t>(d));
  auto emit = [&]() {
    Rational base(multinomial(n, parts));
    for (int i = 0; i < l; ++i) {
      base *= pow(pairing.weights[static_cast<std::size_t>(i)], static_cast<long>(parts[static_cast<std::size_t>(i)]));
    }
    for (const LatticeVector& cls : classes) {
      // Valid coordinate values: w_i = r_i (mod mu_i), |w_i| <= a_i,
      // w_i = a_i (mod 2).
      std::vector<std::vector<std::int64_t>> lists(static_cast<std::size_t>(l));
      bool any_empty = false;
      for (int i = 0; i < l && !any_empty; ++i) {
        const std::int64_t ai = parts[static_cast<std::size_t>(i)];
        const std::int64_t mui = mu[static_cast<std::size_t>(i)];
        const std::int64_t ri =
            (w0[static_cast<std::size_t>(i)] + cls[static_cast<std::size_t>(i)]) % mui;
        const std::int64_t tlo = -floor_div(Integer(ai + ri), Integer(mui));
        const std::int64_t thi = floor_div(Integer(ai - ri), Integer(mui));
        for (std::int64_t t = tlo; t <= thi; ++t) {
          const std::int64_t wi = ri + mui * t;
          if (((wi + ai) & 1) == 0) {
            lists[static_cast<std::size_t>(i)].push_back(wi);
          }
        }
        any_empty = lists[static_cast<std::size_t>(i)].empty();
      }
      if (any_empty) {
        continue;
      }
      std::vector<std::size_t> idx(static_cast<std::size_t>(l), 0);
      LatticeVector w(static_cast<std::size_t>(l));
      for (;;) {
        Integer binprod = 1;
        for (int i = 0; i < l; ++i) {
          const std::int64_t wi =
              lists[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
          w[static_cast<std::size_t>(i)] = wi;
          binprod *= binomial(parts[static_cast<std::size_t>(i)],
                              (parts[static_cast<std::size_t>(i)] + wi) / 2);
        }
        // True translate index of this step-count vector.
        for (int j = 0; j < d; ++j) {
          Integer num = -Integer(x[static_cast<std::size_t>(j)]);
          for (int i = 0; i < l; ++i) {
            num += pairing.mat.at(j, i) * Integer(w[static_cast<std::size_t>(i)]);
          }
          const Integer mj(spec.m[static_cast<std::size_t>(j)]);
          if (num % mj != 0) {
            throw std::logic_error("snf_kernel internal error: translate index not integral");
          }
          k[static_cast<std::size_t>(j)] = to_int64(num / mj);
        }
        acc += ops.from_rational(base * Rational(binprod)) * ops.carry_phase(k, -1);

        int pos = l - 1;
        while (pos >= 0) {
          if (++idx[static_cast<std::size_t>(pos)] <
              lists[static_cast<std::size_t>(pos)].size()) {
            break;
          }
          idx[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) {
          break;
        }
      }
    }
  };

  // Recursive composition enumeration.
  auto walk = [&](auto&& self, int pos, std::int64_t rest) -> void {
    if (pos == l - 1) {
      parts[static_cast<std::size_t>(pos)] = rest;
      emit();
      return;
    }
    for (std::int64_t v = 0; v <= rest; ++v) {
      parts[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, rest - v);
    }
  };
  walk(walk, 0, n);
  return acc;
}

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

}  // namespace

NotCoherentError::NotCoherentError(Reason reason, const std::string& detail)
    : std::runtime_error("diagonalization route not coherent here: " + detail), reason_(reason) {}

KernelValue images_kernel(const TorusSpec& spec, const LatticeVector& x, const LatticeVector& y,
                          std::int64_t n) {
  require_valid(spec);
  require_dim(spec, x, "images_kernel x");
  require_dim(spec, y, "images_kernel y");
  if (n < 0) {
    throw std::invalid_argument("images_kernel: negative step count");
  }
  if (spec.mode == NumericMode::exact) {
    return images_impl(spec, x, y, n, ExactOps{&spec});
  }
  return images_impl(spec, x, y, n, FloatOps{&spec});
}

StateVector evolve_delta(const TorusSpec& spec, const LatticeVector& y, std::int64_t n) {
  require_valid(spec);
  require_dim(spec, y, "evolve_delta y");
  if (n < 0) {
    throw std::invalid_argument("evolve_delta: negative step count");
  }
  StateVector out;
  out.mode = spec.mode;
  if (spec.mode == NumericMode::exact) {
    for (auto& s : evolve_impl(spec, y, n, ExactOps{&spec})) {
      out.values.emplace_back(std::move(s));
    }
  } else {
    for (auto& s : evolve_impl(spec, y, n, FloatOps{&spec})) {
      out.values.emplace_back(s);
    }
  }
  return out;
}

KernelValue snf_kernel(const TorusSpec& spec, const LatticeVector& x, std::int64_t n) {
  require_valid(spec);
  require_dim(spec, x, "snf_kernel x");
  if (n < 0) {
    throw std::invalid_argument("snf_kernel: negative step count");
  }
  if (spec.mode == NumericMode::exact) {
    return snf_impl(spec, x, n, ExactOps{&spec});
  }
  return snf_impl(spec, x, n, FloatOps{&spec});
}

TorusSpec product_spec(const std::vector<TorusSpec>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("product_spec: no factors");
  }
  TorusSpec out;
  out.mode = factors.front().mode;
  out.d = 0;
  for (const TorusSpec& f : factors) {
    require_valid(f);
    if (f.mode != out.mode) {
      throw std::invalid_argument("product_spec: factors mix numeric modes");
    }
    out.d += f.d;
    out.m.insert(out.m.end(), f.m.begin(), f.m.end());
    out.beta.insert(out.beta.end(), f.beta.begin(), f.beta.end());
    out.beta_f.insert(out.beta_f.end(), f.beta_f.begin(), f.beta_f.end());
  }
  // Cartesian product of the step sets with multiplied weights.
  std::vector<Step> acc = {Step{{}, Rational(1)}};
  for (const TorusSpec& f : factors) {
    std::vector<Step> grown;
    grown.reserve(acc.size() * f.steps.steps.size());
    for (const Step& prefix : acc) {
      for (const Step& s : f.steps.steps) {
        Step combined;
        combined.offset = prefix.offset;
        combined.offset.insert(combined.offset.end(), s.offset.begin(), s.offset.end());
        combined.weight = prefix.weight * s.weight;
        grown.push_back(std::move(combined));
      }
    }
    acc.swap(grown);
  }
  out.steps.steps = std::move(acc);
  return out;
}

KernelValue product_kernel(const std::vector<TorusSpec>& factors, const std::vector<LatticeVector>& xs,
                           const std::vector<LatticeVector>& ys, std::int64_t n) {
  if (factors.empty()) {
    throw std::invalid_argument("product_kernel: no factors");
  }
  if (xs.size() != factors.size() || ys.size() != factors.size()) {
    throw std::invalid_argument("product_kernel: factor count mismatch");
  }
  const NumericMode mode = factors.front().mode;
  for (const TorusSpec& f : factors) {
    if (f.mode != mode) {
      throw std::invalid_argument("product_kernel: factors mix numeric modes");
    }
  }
  if (mode == NumericMode::exact) {
    CycloNumber acc(Rational(1));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      acc *= exact_value(images_kernel(factors[i], xs[i], ys[i], n));
    }
    return acc;
  }
  FloatComplex acc(1.0, 0.0);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    acc *= float_value(images_kernel(factors[i], xs[i], ys[i], n));
  }
  return acc;
}

}  // namespace heatsum
