#include <benchmark/benchmark.h>

#include <vector>

#include "roofscale/ghzw.hpp"
#include "roofscale/invariants.hpp"
#include "roofscale/qstate.hpp"
#include "roofscale/rng.hpp"

using namespace roofscale;

namespace {

std::vector<PureState> sample_states(int count) {
  Rng rng(314159);
  std::vector<PureState> states;
  states.reserve(count);
  for (int i = 0; i < count; ++i) {
    states.push_back(random_pure_state(rng, {2, 2, 2}));
  }
  return states;
}

void BM_ThreeTangle(benchmark::State& state) {
  const std::vector<PureState> states = sample_states(64);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(three_tangle(states[i++ & 63]));
  }
}
BENCHMARK(BM_ThreeTangle);

void BM_MonotoneEvaluator(benchmark::State& state) {
  const Monotone& m = monotone("sqrt_tau3");
  const std::vector<PureState> states = sample_states(64);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.evaluator(states[i++ & 63]));
  }
}
BENCHMARK(BM_MonotoneEvaluator);

void BM_CharCurve(benchmark::State& state) {
  const GhzwFamily fam = s2sqrt2_family();
  double p = 0.0;
  for (auto _ : state) {
    p += 1e-4;
    if (p >= 1.0) p = 1e-4;
    benchmark::DoNotOptimize(char_curve(fam, p));
  }
}
BENCHMARK(BM_CharCurve);

void BM_CharSurface(benchmark::State& state) {
  double p = 0.1;
  for (auto _ : state) {
    p += 1e-4;
    if (p >= 0.9) p = 0.1;
    benchmark::DoNotOptimize(char_surface(p, 0.5 * (1.0 - p)));
  }
}
BENCHMARK(BM_CharSurface);

}  // namespace

BENCHMARK_MAIN();
