#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heatsum/rational.hpp"

namespace heatsum {

using LatticeVector = std::vector<std::int64_t>;

struct Step {
  LatticeVector offset;  // lift to Z^d
  Rational weight;
};

/// Symmetric step distribution pi_S: weights are positive, sum to 1, and
/// the support is closed under negation with matching weights. The zero
/// offset is allowed (it is its own negation).
struct StepDistribution {
  std::vector<Step> steps;
};

enum class NumericMode { exact, floating };

/// Weighted Cayley graph data for the torus Z^d / (m_1 Z x ... x m_d Z),
/// twisted by the additive character with parameter beta. Step offsets are
/// lifts to Z^d; beta is exact (Rational) in exact mode and double in
/// float mode.
struct TorusSpec {
  int d = 0;
  std::vector<std::int64_t> m;
  StepDistribution steps;
  NumericMode mode = NumericMode::exact;
  std::vector<Rational> beta;    // exact mode, size d
  std::vector<double> beta_f;    // float mode, size d
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Structural validation; collects every violation instead of throwing.
ValidationReport validate_steps(int d, const StepDistribution& s);
ValidationReport validate_spec(const TorusSpec& spec);

/// Raised by loaders and CLI plumbing when a spec fails validation.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const ValidationReport& report);
  explicit SpecError(const std::string& msg) : std::runtime_error(msg) {}
};

/// prod_j m_j
std::int64_t total_volume(const TorusSpec& spec);

/// max_{s in S} |s_j| for coordinate j; 0 for an empty direction.
std::int64_t support_radius(const StepDistribution& s, int j);

/// Row-major index of a residue vector (each x_j reduced mod m_j) and back.
std::int64_t residue_index(const TorusSpec& spec, const LatticeVector& x);
LatticeVector residue_of_index(const TorusSpec& spec, std::int64_t idx);

/// True when every weight equals 1/|S|.
bool has_uniform_weights(const StepDistribution& s);

/// True when every beta_j is zero (in the spec's numeric mode).
bool is_untwisted(const TorusSpec& spec);

}  // namespace heatsum
