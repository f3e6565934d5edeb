#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "heatsum/closed_forms.hpp"
#include "heatsum/graph_model.hpp"
#include "heatsum/snf.hpp"
#include "heatsum/spectral.hpp"
#include "heatsum/torus_kernel.hpp"
#include "heatsum/walk_sim.hpp"

using namespace heatsum;

namespace {

TorusSpec twisted_grid() {
  TorusSpec spec;
  spec.d = 2;
  spec.m = {6, 5};
  spec.steps.steps = {Step{{1, 0}, Rational(1, 4)}, Step{{-1, 0}, Rational(1, 4)},
                      Step{{0, 1}, Rational(1, 4)}, Step{{0, -1}, Rational(1, 4)}};
  spec.mode = NumericMode::exact;
  spec.beta = {Rational(1, 3), Rational(1, 5)};
  return spec;
}

TorusSpec plain_ring(std::int64_t m) {
  TorusSpec spec;
  spec.d = 1;
  spec.m = {m};
  spec.steps.steps = {Step{{1}, Rational(1, 2)}, Step{{-1}, Rational(1, 2)}};
  spec.mode = NumericMode::exact;
  spec.beta = {Rational(0)};
  return spec;
}

void BM_ImagesKernel(benchmark::State& state) {
  const TorusSpec spec = twisted_grid();
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(images_kernel(spec, {1, 2}, {0, 0}, n));
  }
}
BENCHMARK(BM_ImagesKernel)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void BM_SpectralKernel(benchmark::State& state) {
  const TorusSpec spec = twisted_grid();
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_kernel(spec, {1, 2}, {0, 0}, n));
  }
}
BENCHMARK(BM_SpectralKernel)->Arg(5)->Arg(10)->Arg(20);

void BM_EvolveDelta(benchmark::State& state) {
  const TorusSpec spec = twisted_grid();
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_delta(spec, {0, 0}, n));
  }
}
BENCHMARK(BM_EvolveDelta)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void BM_SnfKernelRoute(benchmark::State& state) {
  const TorusSpec spec = plain_ring(8);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(snf_kernel(spec, {1}, n));
  }
}
BENCHMARK(BM_SnfKernelRoute)->Arg(8)->Arg(16)->Arg(32);

void BM_AlternatingS(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alternating_cos_S(n, 13));
  }
}
BENCHMARK(BM_AlternatingS)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ProductCosPowerSum(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const std::vector<std::int64_t> m = {4, 6, 8};
  const std::vector<Rational> beta = {Rational(0), Rational(0), Rational(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(product_cos_power_sum(m, n, beta));
  }
}
BENCHMARK(BM_ProductCosPowerSum)->Arg(100)->Arg(1000)->Arg(4000);

// Closed form vs term-by-term defining sum at the same parameters: the gap
// is the point of the closed forms.
void BM_TwistedCosClosed(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(additive_twisted_cos_sum(12, 5, 7, Rational(1, 3), n));
  }
}
BENCHMARK(BM_TwistedCosClosed)->Arg(10)->Arg(20);

void BM_TwistedCosDefiningSum(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const TrigSumSpec spec = additive_twisted_cos_sum_spec(12, 5, 7, Rational(1, 3), n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_trig_sum(spec));
  }
}
BENCHMARK(BM_TwistedCosDefiningSum)->Arg(10)->Arg(20);

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937 rng(7u);
  std::uniform_int_distribution<long> entry(-50, 50);
  const int n = static_cast<int>(state.range(0));
  IntMatrix a = IntMatrix::zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a.at(i, j) = entry(rng);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_normal_form(a));
  }
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(6)->Arg(8);

void BM_Simulate(benchmark::State& state) {
  SimConfig config{plain_ring(5), state.range(0), 6, 42};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(config));
  }
  state.SetItemsProcessed(state.iterations() * config.walks * config.horizon);
}
BENCHMARK(BM_Simulate)->Arg(10000)->Arg(100000);

}  // namespace
