// heatsum: exact heat kernels of weighted Cayley graphs on discrete tori,
// closed-form trigonometric sums, and the checks tying them together.
//
// Results are JSON on stdout (--plain for bare text); structured errors go
// to stderr. Exit codes: 0 success, 2 validation failure, 3 verification
// mismatch.

#include <charconv>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heatsum/closed_forms.hpp"
#include "heatsum/dirichlet.hpp"
#include "heatsum/graph_model.hpp"
#include "heatsum/json_io.hpp"
#include "heatsum/lattice_kernel.hpp"
#include "heatsum/snf.hpp"
#include "heatsum/spectral.hpp"
#include "heatsum/torus_kernel.hpp"
#include "heatsum/walk_sim.hpp"

namespace {

using heatsum::CycloNumber;
using heatsum::FloatComplex;
using heatsum::KernelValue;
using heatsum::LatticeVector;
using heatsum::Rational;
using heatsum::TorusSpec;
using heatsum::TrigKind;
using heatsum::TrigSumSpec;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kMismatch = 3;

// Comparison tolerance for float-mode cross-method checks; exact mode
// always compares with zero tolerance.
constexpr double kFloatTolerance = 1e-9;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

LatticeVector parse_int_csv(const std::string& s, const std::string& what) {
  LatticeVector out;
  for (const std::string& tok : split_csv(s)) {
    std::int64_t v = 0;
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || tok.empty()) {
      throw std::invalid_argument(what + ": expected comma-separated integers, got '" + s + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rational_csv(const std::string& s, const std::string& what) {
  std::vector<Rational> out;
  for (const std::string& tok : split_csv(s)) {
    try {
      out.push_back(Rational::parse(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ": expected comma-separated rationals, got '" + s + "'");
    }
  }
  return out;
}

TrigKind parse_kind(const std::string& s) {
  if (s == "cos") return TrigKind::Cos;
  if (s == "sin") return TrigKind::Sin;
  throw std::invalid_argument("kind must be cos or sin");
}

json value_json(const KernelValue& v) { return json::parse(heatsum::serialize_kernel_value(v)); }

std::string plain_value(const KernelValue& v) {
  if (heatsum::is_exact_value(v)) {
    return heatsum::to_string(heatsum::exact_value(v));
  }
  const FloatComplex c = heatsum::float_value(v);
  std::ostringstream os;
  os << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

void emit(bool plain, const json& doc, const std::string& text) {
  if (plain) {
    std::cout << text << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

LatticeVector canonical_residue(const TorusSpec& spec, const LatticeVector& x) {
  return residue_of_index(spec, residue_index(spec, x));
}

void require_dimension(const TorusSpec& spec, const LatticeVector& v, const std::string& what) {
  if (static_cast<int>(v.size()) != spec.d) {
    throw std::invalid_argument(what + ": expected " + std::to_string(spec.d) +
                                " coordinates, got " + std::to_string(v.size()));
  }
}

// The requested worker-thread cap. Everything currently computes on the
// calling thread, so any positive cap is honored; the variable exists so
// the interface is stable.
int read_thread_cap() {
  const char* raw = std::getenv("HEATSUM_THREADS");
  if (raw == nullptr) {
    return 1;
  }
  int v = 0;
  const std::string s(raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
    throw std::invalid_argument("HEATSUM_THREADS must be a positive integer, got '" + s + "'");
  }
  return v;
}

KernelValue evaluate_method(const std::string& method, const TorusSpec& spec,
                            const LatticeVector& x, const LatticeVector& y, std::int64_t n) {
  if (method == "images") {
    return heatsum::images_kernel(spec, x, y, n);
  }
  if (method == "spectral") {
    return heatsum::spectral_kernel(spec, x, y, n);
  }
  if (method == "snf") {
    LatticeVector diff(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      diff[j] = x[j] - y[j];
    }
    return heatsum::snf_kernel(spec, diff, n);
  }
  if (method == "evolve") {
    const heatsum::StateVector state = heatsum::evolve_delta(spec, canonical_residue(spec, y), n);
    return state.values[static_cast<std::size_t>(residue_index(spec, x))];
  }
  throw std::invalid_argument("unknown method '" + method + "'");
}

bool values_equal(const KernelValue& a, const KernelValue& b, double* abs_diff) {
  if (heatsum::is_exact_value(a) && heatsum::is_exact_value(b)) {
    *abs_diff = 0.0;
    return heatsum::exact_value(a) == heatsum::exact_value(b);
  }
  const double diff = std::abs(heatsum::value_to_complex(a) - heatsum::value_to_complex(b));
  *abs_diff = diff;
  return diff <= kFloatTolerance;
}

// Shared tail of every `sum` subcommand: prints the value, optionally runs
// the defining-sum oracle, and turns an oracle mismatch into exit code 3.
// The oracle never alters the primary value, it only appends a block.
int finish_sum(bool plain, json out, const KernelValue& value,
               const std::optional<TrigSumSpec>& oracle_spec) {
  out["value"] = value_json(value);
  int rc = kOk;
  std::string text = plain_value(value);
  if (oracle_spec.has_value()) {
    const CycloNumber oracle = heatsum::brute_force_trig_sum(*oracle_spec);
    const bool matches =
        heatsum::is_exact_value(value) && heatsum::exact_value(value) == oracle;
    out["oracle"] = {{"value", value_json(KernelValue(oracle))}, {"matches", matches}};
    if (!matches) {
      rc = kMismatch;
    }
    text += std::string("\noracle: ") + heatsum::to_string(oracle) +
            (matches ? " (match)" : " (MISMATCH)");
  }
  emit(plain, out, text);
  return rc;
}

struct KernelLatticeArgs {
  std::string spec_path;
  std::string x_csv;
  std::int64_t n = 0;
};

struct KernelTorusArgs {
  std::string spec_path;
  std::string x_csv;
  std::string y_csv;
  std::int64_t n = 0;
  std::vector<std::string> methods;
};

struct SpectrumArgs {
  std::string spec_path;
};

struct VerifyIdentityArgs {
  std::string spec_path;
  std::string x_csv;
  std::string y_csv;
  std::int64_t n = 0;
};

struct VerifyIntegralityArgs {
  std::string spec_path;
  std::int64_t n = 1;
};

struct SnfArgs {
  std::string matrix;
};

struct SimulateArgs {
  std::string spec_path;
  std::int64_t walks = 0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  bool compare = false;
};

struct SumCosPowerArgs {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::string beta = "0";
  std::string kind = "cos";
  bool check = false;
};

struct SumTwistedCosArgs {
  std::int64_t m = 0;
  std::int64_t b = 1;
  std::int64_t r = 1;
  std::string alpha = "0";
  std::optional<double> alpha_radians;
  std::int64_t n = 1;
  std::string kind = "cos";
  bool check = false;
};

struct SumAlternatingArgs {
  std::int64_t n = 0;
  std::int64_t m = 0;
  bool check = false;
};

struct SumMultCharArgs {
  std::int64_t modulus = 0;
  std::int64_t index = 0;
  std::int64_t b = 1;
  std::string alpha = "0";
  std::optional<double> alpha_radians;
  std::int64_t n = 1;
  std::string kind = "cos";
  bool check = false;
};

struct SumProductCosArgs {
  std::string m_csv;
  std::int64_t n = 0;
  std::string beta_csv;
  bool check = false;
};

struct SumComboArgs {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t n = 0;
  std::string beta1 = "0";
  std::string beta2 = "0";
  bool check = false;
};

struct SumMixedArgs {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::int64_t k = 1;
  std::string alpha1 = "0";
  std::string alpha2 = "0";
  std::optional<double> alpha1_radians;
  std::optional<double> alpha2_radians;
  bool check = false;
};

int run_kernel_lattice(const KernelLatticeArgs& args, bool plain) {
  const TorusSpec spec = heatsum::load_torus_spec(args.spec_path);
  const LatticeVector x = parse_int_csv(args.x_csv, "--x");
  require_dimension(spec, x, "--x");
  if (args.n < 0) {
    throw std::invalid_argument("--n must be >= 0");
  }
  const Rational value = heatsum::lattice_kernel(spec.d, spec.steps, x, args.n);
  json out{{"command", "kernel-lattice"}, {"x", x}, {"n", args.n}, {"value", value.str()}};
  emit(plain, out, value.str());
  return kOk;
}

int run_kernel_torus(const KernelTorusArgs& args, bool plain) {
  const TorusSpec spec = heatsum::load_torus_spec(args.spec_path);
  const LatticeVector x = parse_int_csv(args.x_csv, "--x");
  require_dimension(spec, x, "--x");
  LatticeVector y(static_cast<std::size_t>(spec.d), 0);
  if (!args.y_csv.empty()) {
    y = parse_int_csv(args.y_csv, "--y");
    require_dimension(spec, y, "--y");
  }
  if (args.n < 0) {
    throw std::invalid_argument("--n must be >= 0");
  }

  std::vector<std::string> methods;
  for (const std::string& m : args.methods) {
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
      methods.push_back(m);
    }
  }
  if (methods.empty()) {
    methods.push_back("images");
  }

  if (methods.size() == 1) {
    // Single-method evaluation uses the lifts exactly as given (shifting x
    // by a period multiplies the value by the twist factor). The evolve
    // route is defined on residues, so it reduces first.
    const KernelValue v = evaluate_method(methods[0], spec, x, y, args.n);
    json out{{"command", "kernel-torus"}, {"x", x},      {"y", y},
             {"n", args.n},               {"method", methods[0]}, {"value", value_json(v)}};
    emit(plain, out, plain_value(v));
    return kOk;
  }

  // Cross-method comparison happens at the canonical representatives so
  // every route evaluates the same kernel entry.
  const LatticeVector xc = canonical_residue(spec, x);
  const LatticeVector yc = canonical_residue(spec, y);
  json values = json::object();
  std::vector<KernelValue> computed;
  for (const std::string& m : methods) {
    const KernelValue v = evaluate_method(m, spec, xc, yc, args.n);
    values[m] = value_json(v);
    computed.push_back(v);
  }
  bool equal = true;
  double max_diff = 0.0;
  for (std::size_t i = 1; i < computed.size(); ++i) {
    double diff = 0.0;
    if (!values_equal(computed[0], computed[i], &diff)) {
      equal = false;
    }
    max_diff = std::max(max_diff, diff);
  }
  json out{{"command", "kernel-torus"},
           {"x", xc},
           {"y", yc},
           {"n", args.n},
           {"methods", values},
           {"equal", equal},
           {"max_abs_diff", max_diff}};
  std::ostringstream text;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    text << methods[i] << ": " << plain_value(computed[i]) << "\n";
  }
  text << (equal ? "equal: true" : "equal: false");
  emit(plain, out, text.str());
  return equal ? kOk : kMismatch;
}

int run_spectrum(const SpectrumArgs& args, bool plain) {
  const TorusSpec spec = heatsum::load_torus_spec(args.spec_path);
  const std::vector<heatsum::SpectralDatum> data = heatsum::eigenvalues(spec);
  json rows = json::array();
  std::ostringstream text;
  for (const heatsum::SpectralDatum& datum : data) {
    rows.push_back({{"index", datum.index}, {"value", value_json(datum.eigenvalue)}});
    for (std::size_t j = 0; j < datum.index.size(); ++j) {
      text << (j ? "," : "") << datum.index[j];
    }
    text << ": " << plain_value(datum.eigenvalue) << "\n";
  }
  json out{{"command", "spectrum"}, {"count", data.size()}, {"eigenvalues", rows}};
  std::string t = text.str();
  if (!t.empty()) {
    t.pop_back();
  }
  emit(plain, out, t);
  return kOk;
}

int run_verify_identity(const VerifyIdentityArgs& args, bool plain) {
  const TorusSpec spec = heatsum::load_torus_spec(args.spec_path);
  const LatticeVector x = parse_int_csv(args.x_csv, "--x");
  require_dimension(spec, x, "--x");
  LatticeVector y(static_cast<std::size_t>(spec.d), 0);
  if (!args.y_csv.empty()) {
    y = parse_int_csv(args.y_csv, "--y");
    require_dimension(spec, y, "--y");
  }
  const heatsum::IdentityReport report = heatsum::verify_main_identity(spec, x, y, args.n);
  json out{{"command", "verify-main-identity"},
           {"x", x},
           {"y", y},
           {"n", args.n},
           {"equal", report.equal},
           {"lhs", value_json(report.lhs)},
           {"rhs", value_json(report.rhs)},
           {"detail", report.detail}};
  std::ostringstream text;
  text << "equal: " << (report.equal ? "true" : "false") << "\nlhs: " << plain_value(report.lhs)
       << "\nrhs: " << plain_value(report.rhs);
  emit(plain, out, text.str());
  return report.equal ? kOk : kMismatch;
}

int run_verify_integrality(const VerifyIntegralityArgs& args, bool plain) {
  const TorusSpec spec = heatsum::load_torus_spec(args.spec_path);
  const heatsum::IntegralityReport report = heatsum::galois_integrality_check(spec, args.n);
  json out{{"command", "verify-integrality"},
           {"n", args.n},
           {"integral", report.integral},
           {"raw", value_json(report.raw)},
           {"detail", report.detail}};
  if (report.integral) {
    out["value"] = report.value.get_str();
  }
  std::ostringstream text;
  if (report.integral) {
    text << report.value.get_str();
  } else {
    text << "not integral: " << report.detail;
  }
  emit(plain, out, text.str());
  return report.integral ? kOk : kMismatch;
}

int run_snf(const SnfArgs& args, bool plain) {
  // Accepts a path to a JSON file, or the JSON array-of-arrays inline.
  const std::string& src = args.matrix;
  const bool inline_json = !src.empty() && src.find_first_of("[") == 0;
  const heatsum::IntMatrix a =
      inline_json ? heatsum::parse_int_matrix(src) : heatsum::load_int_matrix(src);
  const heatsum::SnfResult s = heatsum::smith_normal_form(a);
  const std::string doc = heatsum::serialize_snf_result(s);
  std::ostringstream text;
  text << "invariant factors:";
  for (const heatsum::Integer& q : heatsum::invariant_factors(s)) {
    text << " " << q.get_str();
  }
  emit(plain, json::parse(doc), text.str());
  return kOk;
}

int run_simulate(const SimulateArgs& args, bool plain) {
  const TorusSpec spec = heatsum::load_torus_spec(args.spec_path);
  const heatsum::SimConfig config{spec, args.walks, args.n, args.seed};
  if (args.compare) {
    const heatsum::ComparisonReport report = heatsum::compare_to_exact(config);
    std::ostringstream text;
    for (const heatsum::ResidueComparison& row : report.rows) {
      for (std::size_t j = 0; j < row.residue.size(); ++j) {
        text << (j ? "," : "") << row.residue[j];
      }
      text << ": empirical " << row.empirical << " exact " << row.exact_text << " deviation "
           << row.deviation << " bound " << row.bound << (row.flagged ? " FLAGGED" : "") << "\n";
    }
    text << "pass: " << (report.pass ? "true" : "false");
    emit(plain, json::parse(heatsum::serialize_comparison_report(report)), text.str());
    return kOk;  // statistical report, not a verification gate
  }
  const heatsum::EmpiricalDistribution dist = heatsum::simulate(config);
  std::ostringstream text;
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    text << i << ": " << dist.counts[i] << "\n";
  }
  std::string t = text.str();
  if (!t.empty()) {
    t.pop_back();
  }
  emit(plain, json::parse(heatsum::serialize_distribution(dist)), t);
  return kOk;
}

int run_sum_cos_power(const SumCosPowerArgs& args, bool plain) {
  const Rational beta = Rational::parse(args.beta);
  const TrigKind kind = parse_kind(args.kind);
  const CycloNumber value = heatsum::cos_power_sum(args.m, args.n, beta, kind);
  std::optional<TrigSumSpec> oracle;
  if (args.check) {
    oracle = heatsum::cos_power_sum_spec(args.m, args.n, beta, kind);
  }
  json out{{"command", "sum-cos-power"},
           {"m", args.m},
           {"n", args.n},
           {"beta", beta.str()},
           {"kind", args.kind}};
  return finish_sum(plain, std::move(out), KernelValue(value), oracle);
}

int run_sum_twisted_cos(const SumTwistedCosArgs& args, bool plain) {
  const TrigKind kind = parse_kind(args.kind);
  json out{{"command", "sum-twisted-cos"}, {"m", args.m}, {"b", args.b},
           {"r", args.r},                  {"n", args.n}, {"kind", args.kind}};
  if (args.alpha_radians.has_value()) {
    if (args.check) {
      throw std::invalid_argument("--check needs the exact form; drop --alpha-radians");
    }
    out["alpha_radians"] = *args.alpha_radians;
    const FloatComplex v = heatsum::additive_twisted_cos_sum_approx(args.m, args.b, args.r,
                                                                    *args.alpha_radians, args.n, kind);
    return finish_sum(plain, std::move(out), KernelValue(v), std::nullopt);
  }
  const Rational alpha = Rational::parse(args.alpha);
  out["alpha_over_pi"] = alpha.str();
  const CycloNumber value =
      heatsum::additive_twisted_cos_sum(args.m, args.b, args.r, alpha, args.n, kind);
  std::optional<TrigSumSpec> oracle;
  if (args.check) {
    oracle = heatsum::additive_twisted_cos_sum_spec(args.m, args.b, args.r, alpha, args.n, kind);
  }
  return finish_sum(plain, std::move(out), KernelValue(value), oracle);
}

int run_sum_alternating(const SumAlternatingArgs& args, bool plain) {
  const Rational value = heatsum::alternating_cos_S(args.n, args.m);
  std::optional<TrigSumSpec> oracle;
  if (args.check) {
    oracle = heatsum::alternating_cos_S_spec(args.n, args.m);
  }
  json out{{"command", "sum-alternating-S"}, {"n", args.n}, {"m", args.m}};
  return finish_sum(plain, std::move(out), KernelValue(CycloNumber(value)), oracle);
}

int run_sum_mult_char(const SumMultCharArgs& args, bool plain) {
  if (args.modulus < 1) {
    throw std::invalid_argument("--modulus must be >= 1");
  }
  const auto characters =
      heatsum::enumerate_dirichlet_characters(static_cast<std::uint32_t>(args.modulus));
  if (args.index < 0 || args.index >= static_cast<std::int64_t>(characters.size())) {
    throw std::invalid_argument("--index must be in [0, " + std::to_string(characters.size()) +
                                ") for modulus " + std::to_string(args.modulus));
  }
  const heatsum::DirichletCharacter& chi = characters[static_cast<std::size_t>(args.index)];
  const TrigKind kind = parse_kind(args.kind);
  json out{{"command", "sum-mult-char"},
           {"modulus", args.modulus},
           {"index", args.index},
           {"order", chi.order},
           {"b", args.b},
           {"n", args.n},
           {"kind", args.kind}};
  if (args.alpha_radians.has_value()) {
    if (args.check) {
      throw std::invalid_argument("--check needs the exact form; drop --alpha-radians");
    }
    out["alpha_radians"] = *args.alpha_radians;
    const FloatComplex v =
        heatsum::multiplicative_twisted_sum_approx(chi, args.b, *args.alpha_radians, args.n, kind);
    return finish_sum(plain, std::move(out), KernelValue(v), std::nullopt);
  }
  const Rational alpha = Rational::parse(args.alpha);
  out["alpha_over_pi"] = alpha.str();
  const CycloNumber value = heatsum::multiplicative_twisted_sum(chi, args.b, alpha, args.n, kind);
  std::optional<TrigSumSpec> oracle;
  if (args.check) {
    oracle = heatsum::multiplicative_twisted_sum_spec(chi, args.b, alpha, args.n, kind);
  }
  return finish_sum(plain, std::move(out), KernelValue(value), oracle);
}

int run_sum_product_cos(const SumProductCosArgs& args, bool plain) {
  const LatticeVector m = parse_int_csv(args.m_csv, "--m");
  std::vector<Rational> beta(m.size(), Rational(0));
  if (!args.beta_csv.empty()) {
    beta = parse_rational_csv(args.beta_csv, "--beta");
  }
  if (beta.size() != m.size()) {
    throw std::invalid_argument("--beta must list one rational per modulus");
  }
  const CycloNumber value = heatsum::product_cos_power_sum(m, args.n, beta);
  std::optional<TrigSumSpec> oracle;
  if (args.check) {
    oracle = heatsum::product_cos_power_sum_spec(m, args.n, beta);
  }
  json betas = json::array();
  for (const Rational& bq : beta) {
    betas.push_back(bq.str());
  }
  json out{{"command", "sum-product-cos"}, {"m", m}, {"n", args.n}, {"beta", betas}};
  return finish_sum(plain, std::move(out), KernelValue(value), oracle);
}

int run_sum_combo(const SumComboArgs& args, bool plain) {
  const Rational beta1 = Rational::parse(args.beta1);
  const Rational beta2 = Rational::parse(args.beta2);
  const CycloNumber value =
      heatsum::linear_combo_power_sum(args.m1, args.m2, args.n, beta1, beta2);
  std::optional<TrigSumSpec> oracle;
  if (args.check) {
    oracle = heatsum::linear_combo_power_sum_spec(args.m1, args.m2, args.n, beta1, beta2);
  }
  json out{{"command", "sum-combo"},
           {"m1", args.m1},
           {"m2", args.m2},
           {"n", args.n},
           {"beta1", beta1.str()},
           {"beta2", beta2.str()}};
  return finish_sum(plain, std::move(out), KernelValue(value), oracle);
}

int run_sum_mixed(const SumMixedArgs& args, bool plain) {
  json out{{"command", "sum-mixed-2d"}, {"m1", args.m1}, {"m2", args.m2},
           {"a", args.a},               {"b", args.b},   {"k", args.k}};
  if (args.alpha1_radians.has_value() || args.alpha2_radians.has_value()) {
    if (!(args.alpha1_radians.has_value() && args.alpha2_radians.has_value())) {
      throw std::invalid_argument("give both --alpha1-radians and --alpha2-radians or neither");
    }
    if (args.check) {
      throw std::invalid_argument("--check needs the exact form; drop the radian shifts");
    }
    out["alpha1_radians"] = *args.alpha1_radians;
    out["alpha2_radians"] = *args.alpha2_radians;
    const FloatComplex v = heatsum::mixed_cos_sin_2d_approx(
        args.m1, args.m2, args.a, args.b, args.k, *args.alpha1_radians, *args.alpha2_radians);
    return finish_sum(plain, std::move(out), KernelValue(v), std::nullopt);
  }
  const Rational alpha1 = Rational::parse(args.alpha1);
  const Rational alpha2 = Rational::parse(args.alpha2);
  out["alpha1_over_pi"] = alpha1.str();
  out["alpha2_over_pi"] = alpha2.str();
  const CycloNumber value =
      heatsum::mixed_cos_sin_2d(args.m1, args.m2, args.a, args.b, args.k, alpha1, alpha2);
  std::optional<TrigSumSpec> oracle;
  if (args.check) {
    oracle = heatsum::mixed_cos_sin_2d_spec(args.m1, args.m2, args.a, args.b, args.k, alpha1,
                                            alpha2);
  }
  return finish_sum(plain, std::move(out), KernelValue(value), oracle);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "heatsum: exact heat kernels on discrete tori and closed-form "
      "trigonometric sums.\nJSON results on stdout (--plain for bare text); "
      "errors on stderr; exit 0 ok, 2 invalid input, 3 verification "
      "mismatch.\nHEATSUM_THREADS caps internal worker threads."};
  app.require_subcommand(1);
  bool plain = false;
  app.add_flag("--plain", plain, "bare text output instead of JSON");

  std::function<int()> action;

  // kernel
  auto* kernel = app.add_subcommand("kernel", "heat kernel values");
  kernel->require_subcommand(1);

  KernelLatticeArgs kl;
  auto* kernel_lattice = kernel->add_subcommand("lattice", "n-step kernel on the covering lattice");
  kernel_lattice->add_option("--spec", kl.spec_path, "spec file (d and steps are used)")->required();
  kernel_lattice->add_option("--x", kl.x_csv, "target point, comma-separated integers")->required();
  kernel_lattice->add_option("--n", kl.n, "number of steps")->required();
  kernel_lattice->callback([&] { action = [&] { return run_kernel_lattice(kl, plain); }; });

  KernelTorusArgs kt;
  auto* kernel_torus = kernel->add_subcommand("torus", "twisted kernel on the torus");
  kernel_torus->add_option("--spec", kt.spec_path, "spec file")->required();
  kernel_torus->add_option("--x", kt.x_csv, "target point, comma-separated integers")->required();
  kernel_torus->add_option("--y", kt.y_csv, "start point (default: origin)");
  kernel_torus->add_option("--n", kt.n, "number of steps")->required();
  kernel_torus
      ->add_option("--method", kt.methods,
                   "evaluation route(s): images, snf, spectral, evolve; several run a "
                   "cross-method comparison")
      ->delimiter(',')
      ->check(CLI::IsMember({"images", "snf", "spectral", "evolve"}));
  kernel_torus->callback([&] { action = [&] { return run_kernel_torus(kt, plain); }; });

  // spectrum
  SpectrumArgs sp;
  auto* spectrum = app.add_subcommand("spectrum", "all adjacency eigenvalues of the torus walk");
  spectrum->add_option("--spec", sp.spec_path, "spec file")->required();
  spectrum->callback([&] { action = [&] { return run_spectrum(sp, plain); }; });

  // verify
  auto* verify = app.add_subcommand("verify", "exact cross-route checks");
  verify->require_subcommand(1);

  VerifyIdentityArgs vi;
  auto* verify_identity =
      verify->add_subcommand("main-identity", "translate-sum route against the Fourier route");
  verify_identity->add_option("--spec", vi.spec_path, "spec file (exact mode)")->required();
  verify_identity->add_option("--x", vi.x_csv, "target point")->required();
  verify_identity->add_option("--y", vi.y_csv, "start point (default: origin)");
  verify_identity->add_option("--n", vi.n, "number of steps")->required();
  verify_identity->callback([&] { action = [&] { return run_verify_identity(vi, plain); }; });

  VerifyIntegralityArgs vg;
  auto* verify_integrality = verify->add_subcommand(
      "integrality", "|S|^n * (trace of the n-th adjacency power) must be an integer");
  verify_integrality->add_option("--spec", vg.spec_path, "spec file (uniform weights, no twist)")
      ->required();
  verify_integrality->add_option("--n", vg.n, "power")->required();
  verify_integrality->callback([&] { action = [&] { return run_verify_integrality(vg, plain); }; });

  // sum
  auto* sum = app.add_subcommand("sum", "closed-form trigonometric sums");
  sum->require_subcommand(1);

  SumCosPowerArgs scp;
  auto* sum_cos = sum->add_subcommand("cos-power", "sum_j trig^n(2*pi*(j+beta)/m)");
  sum_cos->add_option("--m", scp.m, "number of angles")->required();
  sum_cos->add_option("--n", scp.n, "power")->required();
  sum_cos->add_option("--beta", scp.beta, "fractional shift, rational (default 0)");
  sum_cos->add_option("--kind", scp.kind, "cos or sin")->check(CLI::IsMember({"cos", "sin"}));
  sum_cos->add_flag("--check", scp.check, "also evaluate the defining sum term by term");
  sum_cos->callback([&] { action = [&] { return run_sum_cos_power(scp, plain); }; });

  SumTwistedCosArgs stc;
  auto* sum_twisted =
      sum->add_subcommand("twisted-cos", "sum_j e^{2*pi*i*j*r/m} trig^n(2*pi*j*b/m + alpha)");
  sum_twisted->add_option("--m", stc.m, "modulus")->required();
  sum_twisted->add_option("--b", stc.b, "frequency b in {1..m-1}")->required();
  sum_twisted->add_option("--r", stc.r, "twist r in {1..m-1}")->required();
  sum_twisted->add_option("--alpha", stc.alpha, "shift as a rational multiple of pi (default 0)");
  sum_twisted->add_option("--alpha-radians", stc.alpha_radians,
                          "arbitrary real shift in radians (floating result)");
  sum_twisted->add_option("--n", stc.n, "power")->required();
  sum_twisted->add_option("--kind", stc.kind, "cos or sin")->check(CLI::IsMember({"cos", "sin"}));
  sum_twisted->add_flag("--check", stc.check, "also evaluate the defining sum term by term");
  sum_twisted->callback([&] { action = [&] { return run_sum_twisted_cos(stc, plain); }; });

  SumAlternatingArgs sal;
  auto* sum_alt = sum->add_subcommand("alternating-S",
                                      "S(n,m) = sum_{k=1}^m (-1)^k cos^{2n}(k*pi/(2m+2))");
  sum_alt->add_option("--n", sal.n, "half-power n (the cosine power is 2n)")->required();
  sum_alt->add_option("--m", sal.m, "number of summands")->required();
  sum_alt->add_flag("--check", sal.check, "also evaluate the defining sum term by term");
  sum_alt->callback([&] { action = [&] { return run_sum_alternating(sal, plain); }; });

  SumMultCharArgs smc;
  auto* sum_mult = sum->add_subcommand(
      "mult-char", "sum_j conj(chi(j)) trig^n(2*pi*j*b/m + alpha), chi primitive");
  sum_mult->add_option("--modulus", smc.modulus, "character modulus")->required();
  sum_mult->add_option("--index", smc.index,
                       "character position in the deterministic enumeration (0 = principal)")
      ->required();
  sum_mult->add_option("--b", smc.b, "frequency b in {1..m-1}")->required();
  sum_mult->add_option("--alpha", smc.alpha, "shift as a rational multiple of pi (default 0)");
  sum_mult->add_option("--alpha-radians", smc.alpha_radians,
                       "arbitrary real shift in radians (floating result)");
  sum_mult->add_option("--n", smc.n, "power")->required();
  sum_mult->add_option("--kind", smc.kind, "cos or sin")->check(CLI::IsMember({"cos", "sin"}));
  sum_mult->add_flag("--check", smc.check, "also evaluate the defining sum term by term");
  sum_mult->callback([&] { action = [&] { return run_sum_mult_char(smc, plain); }; });

  SumProductCosArgs spc;
  auto* sum_prod = sum->add_subcommand("product-cos",
                                       "sum over the box of prod_j cos^n(2*pi*(l_j+beta_j)/m_j)");
  sum_prod->add_option("--m", spc.m_csv, "moduli, comma-separated")->required();
  sum_prod->add_option("--n", spc.n, "power")->required();
  sum_prod->add_option("--beta", spc.beta_csv, "shifts, comma-separated rationals (default 0)");
  sum_prod->add_flag("--check", spc.check, "also evaluate the defining sum term by term");
  sum_prod->callback([&] { action = [&] { return run_sum_product_cos(spc, plain); }; });

  SumComboArgs sco;
  auto* sum_combo = sum->add_subcommand(
      "combo", "sum over the torus of (cos(2*pi*(a+beta1)/m1) + cos(2*pi*(b+beta2)/m2))^n");
  sum_combo->add_option("--m1", sco.m1, "first modulus")->required();
  sum_combo->add_option("--m2", sco.m2, "second modulus")->required();
  sum_combo->add_option("--n", sco.n, "power")->required();
  sum_combo->add_option("--beta1", sco.beta1, "first shift, rational (default 0)");
  sum_combo->add_option("--beta2", sco.beta2, "second shift, rational (default 0)");
  sum_combo->add_flag("--check", sco.check, "also evaluate the defining sum term by term");
  sum_combo->callback([&] { action = [&] { return run_sum_combo(sco, plain); }; });

  SumMixedArgs smx;
  auto* sum_mixed = sum->add_subcommand(
      "mixed-2d",
      "sum_{j,l} (-1)^j cos^k(pi*j*a/m1 + alpha1) sin^k(2*pi*l*b/m2 + alpha2)");
  sum_mixed->add_option("--m1", smx.m1, "first modulus")->required();
  sum_mixed->add_option("--m2", smx.m2, "second modulus")->required();
  sum_mixed->add_option("--a", smx.a, "first frequency")->required();
  sum_mixed->add_option("--b", smx.b, "second frequency")->required();
  sum_mixed->add_option("--k", smx.k, "power")->required();
  sum_mixed->add_option("--alpha1", smx.alpha1, "first shift / pi, rational (default 0)");
  sum_mixed->add_option("--alpha2", smx.alpha2, "second shift / pi, rational (default 0)");
  sum_mixed->add_option("--alpha1-radians", smx.alpha1_radians, "first shift in radians");
  sum_mixed->add_option("--alpha2-radians", smx.alpha2_radians, "second shift in radians");
  sum_mixed->add_flag("--check", smx.check, "also evaluate the defining sum term by term");
  sum_mixed->callback([&] { action = [&] { return run_sum_mixed(smx, plain); }; });

  // snf
  SnfArgs sn;
  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("--matrix", sn.matrix, "JSON array-of-arrays, inline or a file path")
      ->required();
  snf->callback([&] { action = [&] { return run_snf(sn, plain); }; });

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo walk on the torus");
  simulate->add_option("--spec", sim.spec_path, "spec file (untwisted)")->required();
  simulate->add_option("--walks", sim.walks, "number of walks")->required();
  simulate->add_option("--n", sim.n, "steps per walk")->required();
  simulate->add_option("--seed", sim.seed, "random seed (default 0)");
  simulate->add_flag("--compare", sim.compare,
                     "compare frequencies to the exact kernel with 4-sigma bounds");
  simulate->callback([&] { action = [&] { return run_simulate(sim, plain); }; });

  // Let --plain appear anywhere on the line, not only before the
  // subcommand: unmatched options climb back up to the root.
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
    for (CLI::App* child : node->get_subcommands([](CLI::App*) { return true; })) {
      child->fallthrough();
      enable_fallthrough(child);
    }
  };
  enable_fallthrough(&app);

  try {
    (void)read_thread_cap();
    app.parse(argc, argv);
    if (!action) {
      std::cerr << json{{"error", "no subcommand selected"}}.dump() << "\n";
      return kValidation;
    }
    return action();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return kValidation;
  }
}
