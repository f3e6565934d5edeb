#include "heatsum/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace heatsum {

Integer binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  if (k < 0 || k > n) return Integer(0);
  if (k > n - k) k = n - k;
  Integer acc(1);
  for (std::int64_t i = 1; i <= k; ++i) {
    acc *= Integer(n - k + i);
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return acc;
}

Integer multinomial(std::int64_t n, const std::vector<std::int64_t>& parts) {
  std::int64_t total = 0;
  for (auto a : parts) {
    if (a < 0) throw std::invalid_argument("multinomial: negative part");
    total += a;
  }
  if (total != n) throw std::invalid_argument("multinomial: parts do not sum to n");
  Integer acc(1);
  std::int64_t rem = n;
  for (auto a : parts) {
    acc *= binomial(rem, a);
    rem -= a;
  }
  return acc;
}

}  // namespace heatsum
