#pragma once

#include <complex>
#include <stdexcept>
#include <variant>

#include "heatsum/cyclotomic.hpp"

namespace heatsum {

using FloatComplex = std::complex<double>;

/// Tagged kernel value: exact cyclotomic number or floating complex.
/// Exact values arise only from exact-mode specs; the two modes never mix
/// inside one computation.
using KernelValue = std::variant<CycloNumber, FloatComplex>;

inline bool is_exact_value(const KernelValue& v) {
  return std::holds_alternative<CycloNumber>(v);
}

inline const CycloNumber& exact_value(const KernelValue& v) {
  if (!is_exact_value(v)) {
    throw std::logic_error("exact_value: value is floating");
  }
  return std::get<CycloNumber>(v);
}

inline FloatComplex float_value(const KernelValue& v) {
  if (is_exact_value(v)) {
    throw std::logic_error("float_value: value is exact");
  }
  return std::get<FloatComplex>(v);
}

/// Numerical embedding of either alternative.
inline FloatComplex value_to_complex(const KernelValue& v) {
  return is_exact_value(v) ? std::get<CycloNumber>(v).to_complex() : std::get<FloatComplex>(v);
}

}  // namespace heatsum
