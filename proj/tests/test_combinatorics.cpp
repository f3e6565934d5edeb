#include "doctest.h"
#include "heatsum/combinatorics.hpp"

#include <random>

using heatsum::binomial;
using heatsum::Integer;
using heatsum::multinomial;

TEST_CASE("binomial examples") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(10, 10) == 1);
  CHECK(binomial(10, 11) == 0);
  CHECK(binomial(10, -1) == 0);
}

TEST_CASE("binomial against gmp oracle") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<unsigned long> nd(0, 2000);
  for (int i = 0; i < 60; ++i) {
    unsigned long n = nd(rng);
    unsigned long k = std::uniform_int_distribution<unsigned long>(0, n)(rng);
    Integer expect;
    mpz_bin_uiui(expect.get_mpz_t(), n, k);
    CHECK(binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)) == expect);
  }
}

TEST_CASE("binomial Pascal identity randomized") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> nd(1, 400);
  for (int i = 0; i < 100; ++i) {
    std::int64_t n = nd(rng);
    std::uniform_int_distribution<std::int64_t> kd(0, n);
    std::int64_t k = kd(rng);
    CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
}

TEST_CASE("binomial symmetry and row sums") {
  std::mt19937 rng(13);
  for (int i = 0; i < 40; ++i) {
    std::int64_t n = std::uniform_int_distribution<std::int64_t>(0, 120)(rng);
    Integer row_sum = 0;
    for (std::int64_t k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n, n - k));
      row_sum += binomial(n, k);
    }
    Integer expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 2, static_cast<unsigned long>(n));
    CHECK(row_sum == expect);
  }
}

TEST_CASE("multinomial") {
  CHECK(multinomial(4, {2, 2}) == 6);
  CHECK(multinomial(6, {1, 2, 3}) == 60);
  CHECK(multinomial(0, {}) == 1);
  CHECK(multinomial(5, {5}) == 1);
  CHECK_THROWS(multinomial(4, {2, 3}));
  CHECK_THROWS(multinomial(4, {5, -1}));

  // agreement with the factorial definition on random tuples
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    int l = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<std::int64_t> parts(l);
    std::int64_t n = 0;
    for (auto& a : parts) {
      a = std::uniform_int_distribution<std::int64_t>(0, 8)(rng);
      n += a;
    }
    Integer num, den(1), f;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(n));
    for (auto a : parts) {
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(a));
      den *= f;
    }
    CHECK(multinomial(n, parts) * den == num);
  }
}
