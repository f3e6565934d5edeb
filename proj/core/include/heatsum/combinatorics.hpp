#pragma once

#include <cstdint>
#include <vector>

#include "heatsum/rational.hpp"

namespace heatsum {

/// binom(n, k) by a multiplicative running product with exact division at
/// each step. Returns 0 for k < 0 or k > n. Requires n >= 0.
Integer binomial(std::int64_t n, std::int64_t k);

/// n! / (a_1! ... a_l!). Requires a_i >= 0 and sum(a) == n.
Integer multinomial(std::int64_t n, const std::vector<std::int64_t>& parts);

}  // namespace heatsum
