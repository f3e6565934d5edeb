#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsum/graph_model.hpp"
#include "heatsum/kernel_value.hpp"

namespace heatsum {

/// Twisted heat kernel on the torus by summation over lattice translates:
/// K(x, y; n) = sum_k exp(-2 pi i k.beta) K_Y(x - y + k*m, 0; n), where
/// K_Y is the lattice kernel and the k-sum runs over the finitely many
/// translates inside the n-step support box. x and y are lifts to Z^d and
/// are NOT reduced: shifting x by a period multiplies the value by the
/// character factor.
KernelValue images_kernel(const TorusSpec& spec, const LatticeVector& x, const LatticeVector& y,
                          std::int64_t n);

/// Table over the M = prod m_j residues of the torus, indexed by
/// residue_index. Entries share the spec's numeric mode.
struct StateVector {
  NumericMode mode = NumericMode::exact;
  std::vector<KernelValue> values;
};

/// Independent oracle: start from the delta state at the residue of y and
/// apply n twisted averaging steps. A step reaching across the fundamental
/// domain [0,m) picks up the character factor of its integer carry, so the
/// entry at residue x equals images_kernel(spec, x, y', n) with y' the
/// canonical representative of y.
StateVector evolve_delta(const TorusSpec& spec, const LatticeVector& y, std::int64_t n);

/// Raised when a spec falls outside the coherent domain of the
/// diagonalization-based kernel: the step set must split into disjoint
/// opposite pairs without the zero step, each paired coordinate must
/// satisfy the periodicity condition matching it to its modulus, and the
/// residue classes produced by the congruence solver must agree with
/// direct enumeration. Discrepancies are reported, never patched over.
class NotCoherentError : public std::runtime_error {
 public:
  enum class Reason {
    zero_step,          // step set contains the zero offset
    pairing,            // steps do not split into +/- representative pairs
    period_condition,   // mu_i * (column i) not divisible by the moduli
    class_mismatch,     // solver classes disagree with direct enumeration
  };

  NotCoherentError(Reason reason, const std::string& detail);
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

/// Kernel K(x, 0; n) evaluated through the Smith-decomposition route:
/// signed step-count vectors w with S*w = x (mod m) are enumerated as a
/// particular solution plus homogeneous residue classes plus per-coordinate
/// period shifts, and each term carries the character factor of its true
/// translate index (S*w - x)/m. Cross-check only: must equal images_kernel
/// on every accepted instance; incoherent instances raise NotCoherentError.
KernelValue snf_kernel(const TorusSpec& spec, const LatticeVector& x, std::int64_t n);

/// Cartesian product spec: dimensions concatenate, the step set is the
/// product of the factor step sets with multiplied weights, and the twist
/// parameters concatenate. All factors must share one numeric mode.
TorusSpec product_spec(const std::vector<TorusSpec>& factors);

/// Product-graph kernel: the product over factors of the factor kernels,
/// equal to images_kernel on the assembled product spec.
KernelValue product_kernel(const std::vector<TorusSpec>& factors, const std::vector<LatticeVector>& xs,
                           const std::vector<LatticeVector>& ys, std::int64_t n);

}  // namespace heatsum
