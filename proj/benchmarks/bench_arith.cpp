#include <benchmark/benchmark.h>

#include "heatsum/cyclotomic.hpp"

using heatsum::CycloNumber;
using heatsum::Rational;

namespace {

CycloNumber dense_element(std::uint32_t N) {
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (std::int64_t e = 0; e < N; e += 2) terms.emplace_back(e, Rational(e + 1, e + 2));
  return CycloNumber::from_monomials(N, terms);
}

void BM_CycloMul(benchmark::State& state) {
  auto N = static_cast<std::uint32_t>(state.range(0));
  CycloNumber a = dense_element(N);
  CycloNumber b = a + CycloNumber(Rational(1, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_CycloMul)->Arg(12)->Arg(36)->Arg(120)->Arg(360);

void BM_CycloPow(benchmark::State& state) {
  CycloNumber a = dense_element(36);
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatsum::pow(a, static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_CycloPow)->Arg(10)->Arg(100)->Arg(1000);

void BM_CyclotomicPolynomial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(heatsum::cyclotomic_polynomial(static_cast<std::uint32_t>(state.range(0))));
  }
}
BENCHMARK(BM_CyclotomicPolynomial)->Arg(360)->Arg(1155);

}  // namespace

BENCHMARK_MAIN();
