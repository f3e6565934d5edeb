#include "heatsum/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace heatsum {

namespace {

std::string fmt_offset(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

LatticeVector negated(const LatticeVector& v) {
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

}  // namespace

ValidationReport validate_steps(int d, const StepDistribution& s) {
  ValidationReport report;
  auto fail = [&report](const std::string& msg) {
    report.valid = false;
    report.violations.push_back(msg);
  };

  if (s.steps.empty()) {
    fail("step distribution is empty");
    return report;
  }
  std::map<LatticeVector, Rational> by_offset;
  Rational total(0);
  for (const auto& step : s.steps) {
    if (static_cast<int>(step.offset.size()) != d)
      fail("offset " + fmt_offset(step.offset) + " has wrong dimension");
    if (step.weight.sign() <= 0)
      fail("offset " + fmt_offset(step.offset) + " has non-positive weight " + step.weight.str());
    if (by_offset.count(step.offset))
      fail("offset " + fmt_offset(step.offset) + " appears more than once");
    by_offset.emplace(step.offset, step.weight);
    total += step.weight;
  }
  if (total != Rational(1)) fail("weights sum to " + total.str() + ", expected 1");
  for (const auto& [offset, weight] : by_offset) {
    auto it = by_offset.find(negated(offset));
    if (it == by_offset.end())
      fail("offset " + fmt_offset(offset) + " has no negation in the support");
    else if (it->second != weight)
      fail("offsets " + fmt_offset(offset) + " and its negation carry different weights");
  }
  return report;
}

ValidationReport validate_spec(const TorusSpec& spec) {
  ValidationReport report;
  auto fail = [&report](const std::string& msg) {
    report.valid = false;
    report.violations.push_back(msg);
  };

  if (spec.d < 1) fail("dimension must be at least 1");
  if (static_cast<int>(spec.m.size()) != spec.d) fail("m has wrong length");
  for (auto mj : spec.m)
    if (mj < 1) fail("modulus " + std::to_string(mj) + " is not positive");

  ValidationReport steps = validate_steps(spec.d, spec.steps);
  if (!steps.valid) {
    report.valid = false;
    report.violations.insert(report.violations.end(), steps.violations.begin(), steps.violations.end());
  }

  if (spec.mode == NumericMode::exact) {
    if (static_cast<int>(spec.beta.size()) != spec.d) fail("beta has wrong length");
    if (!spec.beta_f.empty()) fail("float beta present in exact mode");
  } else {
    if (static_cast<int>(spec.beta_f.size()) != spec.d) fail("beta has wrong length");
    if (!spec.beta.empty()) fail("exact beta present in float mode");
    for (auto b : spec.beta_f)
      if (!std::isfinite(b)) fail("beta contains a non-finite value");
  }
  return report;
}

SpecError::SpecError(const ValidationReport& report)
    : std::runtime_error([&report] {
        std::string msg = "invalid spec";
        for (const auto& v : report.violations) msg += "; " + v;
        return msg;
      }()) {}

std::int64_t total_volume(const TorusSpec& spec) {
  std::int64_t M = 1;
  for (auto mj : spec.m) {
    if (mj > 0 && M > (1LL << 62) / mj) throw std::overflow_error("total_volume overflow");
    M *= mj;
  }
  return M;
}

std::int64_t support_radius(const StepDistribution& s, int j) {
  std::int64_t r = 0;
  for (const auto& step : s.steps) r = std::max(r, std::abs(step.offset[static_cast<std::size_t>(j)]));
  return r;
}

std::int64_t residue_index(const TorusSpec& spec, const LatticeVector& x) {
  std::int64_t idx = 0;
  for (int j = 0; j < spec.d; ++j) {
    std::int64_t mj = spec.m[static_cast<std::size_t>(j)];
    std::int64_t r = x[static_cast<std::size_t>(j)] % mj;
    if (r < 0) r += mj;
    idx = idx * mj + r;
  }
  return idx;
}

LatticeVector residue_of_index(const TorusSpec& spec, std::int64_t idx) {
  LatticeVector x(static_cast<std::size_t>(spec.d));
  for (int j = spec.d - 1; j >= 0; --j) {
    std::int64_t mj = spec.m[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(j)] = idx % mj;
    idx /= mj;
  }
  return x;
}

bool has_uniform_weights(const StepDistribution& s) {
  if (s.steps.empty()) return false;
  Rational expect(1, static_cast<long>(s.steps.size()));
  return std::all_of(s.steps.begin(), s.steps.end(),
                     [&expect](const Step& st) { return st.weight == expect; });
}

bool is_untwisted(const TorusSpec& spec) {
  if (spec.mode == NumericMode::exact)
    return std::all_of(spec.beta.begin(), spec.beta.end(), [](const Rational& b) { return b.is_zero(); });
  return std::all_of(spec.beta_f.begin(), spec.beta_f.end(), [](double b) { return b == 0.0; });
}

}  // namespace heatsum
