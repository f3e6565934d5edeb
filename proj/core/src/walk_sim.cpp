#include "heatsum/walk_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "heatsum/kernel_value.hpp"
#include "heatsum/torus_kernel.hpp"

namespace heatsum {

namespace {

constexpr std::int64_t kBatchSize = 1 << 16;

// SplitMix64 finalizer; decorrelates the per-batch seeds.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t batch_seed(std::uint64_t seed, std::int64_t batch) {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(batch) + 1));
}

void require_valid_config(const SimConfig& config) {
  const ValidationReport report = validate_spec(config.spec);
  if (!report.valid) {
    throw SpecError(report);
  }
  if (!is_untwisted(config.spec)) {
    throw std::invalid_argument("simulate: twist must be zero (probabilities only)");
  }
  if (config.walks < 1) {
    throw std::invalid_argument("simulate: walks must be >= 1");
  }
  if (config.horizon < 0) {
    throw std::invalid_argument("simulate: horizon must be >= 0");
  }
}

// Cumulative probabilities of the steps; exact weights converted once.
// The final entry is pinned to 1 so every sample lands in the table.
std::vector<double> cumulative_table(const StepDistribution& steps) {
  std::vector<double> cum;
  cum.reserve(steps.steps.size());
  double acc = 0.0;
  for (const Step& s : steps.steps) {
    acc += s.weight.to_double();
    cum.push_back(acc);
  }
  cum.back() = 1.0;
  return cum;
}

}  // namespace

EmpiricalDistribution simulate(const SimConfig& config) {
  require_valid_config(config);

  const TorusSpec& spec = config.spec;
  const int d = spec.d;
  const std::int64_t volume = total_volume(spec);
  const std::vector<double> cum = cumulative_table(spec.steps);
  const std::size_t num_steps = spec.steps.steps.size();

  EmpiricalDistribution result;
  result.counts.assign(static_cast<std::size_t>(volume), 0);
  result.walks = config.walks;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LatticeVector position(static_cast<std::size_t>(d), 0);

  const std::int64_t batches = (config.walks + kBatchSize - 1) / kBatchSize;
  for (std::int64_t b = 0; b < batches; ++b) {
    std::mt19937_64 rng(batch_seed(config.seed, b));
    const std::int64_t in_batch = std::min<std::int64_t>(kBatchSize, config.walks - b * kBatchSize);
    for (std::int64_t w = 0; w < in_batch; ++w) {
      std::fill(position.begin(), position.end(), 0);
      for (std::int64_t t = 0; t < config.horizon; ++t) {
        const double u = unit(rng);
        std::size_t pick =
            static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (pick >= num_steps) {
          pick = num_steps - 1;
        }
        const LatticeVector& offset = spec.steps.steps[pick].offset;
        for (int j = 0; j < d; ++j) {
          const std::int64_t m = spec.m[static_cast<std::size_t>(j)];
          std::int64_t c = (position[static_cast<std::size_t>(j)] +
                            offset[static_cast<std::size_t>(j)]) %
                           m;
          if (c < 0) {
            c += m;
          }
          position[static_cast<std::size_t>(j)] = c;
        }
      }
      ++result.counts[static_cast<std::size_t>(residue_index(spec, position))];
    }
  }
  return result;
}

ComparisonReport compare_to_exact(const SimConfig& config) {
  const EmpiricalDistribution empirical = simulate(config);

  const TorusSpec& spec = config.spec;
  const LatticeVector origin(static_cast<std::size_t>(spec.d), 0);
  const StateVector exact = evolve_delta(spec, origin, config.horizon);

  ComparisonReport report;
  report.walks = config.walks;
  report.horizon = config.horizon;
  report.rows.reserve(exact.values.size());

  const double walks = static_cast<double>(config.walks);
  for (std::size_t i = 0; i < exact.values.size(); ++i) {
    ResidueComparison row;
    row.residue = residue_of_index(spec, static_cast<std::int64_t>(i));
    row.empirical = empirical.frequency(i);

    const KernelValue& value = exact.values[i];
    row.exact = value_to_complex(value).real();
    if (is_exact_value(value)) {
      row.exact_text = to_string(exact_value(value));
    } else {
      std::ostringstream os;
      os << row.exact;
      row.exact_text = os.str();
    }

    row.deviation = std::abs(row.empirical - row.exact);
    row.bound = 4.0 * std::sqrt(row.exact * (1.0 - row.exact) / walks);
    row.flagged = row.deviation > row.bound;
    if (row.flagged) {
      ++report.flagged_count;
    }
    report.rows.push_back(std::move(row));
  }
  report.pass = report.flagged_count == 0;
  return report;
}

}  // namespace heatsum
