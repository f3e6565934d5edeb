#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heatsum/graph_model.hpp"
#include "heatsum/kernel_value.hpp"

namespace heatsum {

/// One Fourier mode of the torus walk: the character index together with
/// the eigenvalue of the weighted adjacency operator on that character.
struct SpectralDatum {
  LatticeVector index;
  KernelValue eigenvalue;
};

/// chi_n(x) = prod_j exp(2 pi i (n_j + beta_j) x_j / m_j). Well defined
/// for any integer vectors nIdx and x (x is not reduced; shifting a
/// coordinate of nIdx by m_j leaves the value unchanged).
KernelValue character_value(const TorusSpec& spec, const LatticeVector& nIdx,
                            const LatticeVector& x);

/// lambda_n = sum_s pi(s) chi_n(s). In exact mode the conductor divides
/// lcm_j(m_j * den(beta_j)).
KernelValue eigenvalue(const TorusSpec& spec, const LatticeVector& nIdx);

/// All M eigenvalues, one per residue in index order (multiplicities
/// preserved).
std::vector<SpectralDatum> eigenvalues(const TorusSpec& spec);

/// Fourier expansion of the kernel:
///   (1/M) sum_n lambda_n^steps chi_n(x) conj(chi_n(y)).
/// Equals images_kernel for every validated spec; the two routes share no
/// arithmetic, which is what makes the equality a meaningful check.
KernelValue spectral_kernel(const TorusSpec& spec, const LatticeVector& x,
                            const LatticeVector& y, std::int64_t n);

/// Outcome of comparing the translate-sum and Fourier evaluations of the
/// same kernel entry as exact cyclotomic numbers.
struct IdentityReport {
  bool equal = false;
  KernelValue lhs;  // translate-sum route (images_kernel)
  KernelValue rhs;  // Fourier route (spectral_kernel)
  std::string detail;
};

/// Runs both evaluations and compares exactly. Requires exact mode; an
/// unequal report signals an implementation bug, so the detail string
/// carries both canonical forms.
IdentityReport verify_main_identity(const TorusSpec& spec, const LatticeVector& x,
                                    const LatticeVector& y, std::int64_t n);

/// Trace power sum sum_n lambda_n^p, evaluated on the cheap side of the
/// trace identity: M * sum_k exp(-2 pi i k . beta) K_Y(k * m, 0; p), with
/// finitely many k by the support bound. Requires p >= 1.
KernelValue spectral_power_sum(const TorusSpec& spec, std::int64_t p);

/// Result of the integrality check on a = |S|^n * sum_n lambda_n^n.
struct IntegralityReport {
  bool integral = false;
  Integer value;   // the integer, when integral
  KernelValue raw; // |S|^n times the power sum, as computed
  std::string detail;
};

/// For uniform weights and no twist, |S|^n sum lambda^n counts closed
/// walks, hence must be a rational integer; a failure signals an
/// arithmetic bug. Requires exact mode, uniform weights, beta = 0, n >= 1
/// (std::invalid_argument otherwise).
IntegralityReport galois_integrality_check(const TorusSpec& spec, std::int64_t n);

}  // namespace heatsum
