#pragma once

#include <string>

#include "heatsum/graph_model.hpp"
#include "heatsum/kernel_value.hpp"
#include "heatsum/snf.hpp"
#include "heatsum/walk_sim.hpp"

namespace heatsum {

/// Spec files:
///   { "d": 2, "m": [4, 6],
///     "steps": [{"offset": [1, 0], "weight": "1/4"}, ...],
///     "beta": ["1/3", "0"], "mode": "exact" }
/// Weights are rational strings (integers also accepted). In exact mode
/// beta entries are rational strings or integers; in float mode they are
/// numbers (rational strings also accepted). "beta" may be omitted for an
/// untwisted spec; "mode" defaults to "exact". Malformed documents and
/// specs rejected by validate_spec raise SpecError.
TorusSpec parse_torus_spec(const std::string& json_text);
TorusSpec load_torus_spec(const std::string& path);
std::string serialize_torus_spec(const TorusSpec& spec, int indent = 2);

/// Kernel values:
///   exact: { "mode": "exact", "conductor": N,
///            "coefficients": ["p/q", ...],   // power basis, ascending
///            "text": "...",                   // canonical human form
///            "approx": {"re": x, "im": y} }
///   float: { "mode": "float", "re": x, "im": y }
/// parse_kernel_value inverts serialize_kernel_value exactly (the exact
/// branch reconstructs from conductor + coefficients).
std::string serialize_kernel_value(const KernelValue& v, int indent = 2);
KernelValue parse_kernel_value(const std::string& json_text);

/// Integer matrices as arrays of arrays; entries serialize as decimal
/// strings (arbitrary precision), and parsing accepts numbers or strings.
std::string serialize_int_matrix(const IntMatrix& a, int indent = 2);
IntMatrix parse_int_matrix(const std::string& json_text);
IntMatrix load_int_matrix(const std::string& path);

/// Smith decomposition: { "U": ..., "D": ..., "V": ...,
///                        "invariant_factors": ["q1", ...] }.
std::string serialize_snf_result(const SnfResult& s, int indent = 2);
SnfResult parse_snf_result(const std::string& json_text);

/// Simulation output: { "walks": N, "counts": [...], "frequencies": [...] }.
std::string serialize_distribution(const EmpiricalDistribution& dist, int indent = 2);
EmpiricalDistribution parse_distribution(const std::string& json_text);

/// Comparison report: { "walks": N, "horizon": n, "pass": bool,
///   "flagged": k, "rows": [{ "residue": [...], "empirical": x,
///   "exact": x, "exact_text": "...", "deviation": x, "bound": x,
///   "flagged": bool }, ...] }.
std::string serialize_comparison_report(const ComparisonReport& report, int indent = 2);
ComparisonReport parse_comparison_report(const std::string& json_text);

}  // namespace heatsum
