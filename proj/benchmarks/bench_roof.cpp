#include <benchmark/benchmark.h>

#include "roofscale/convexroof.hpp"
#include "roofscale/ghzw.hpp"
#include "roofscale/invariants.hpp"
#include "roofscale/qstate.hpp"
#include "roofscale/rng.hpp"

using namespace roofscale;

namespace {

void BM_RoofRank2(benchmark::State& state) {
  const MixedState rho = mixture_state(standard_family(), 0.8);
  const Monotone& m = monotone("sqrt_tau3");
  RoofOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(convex_roof(m, rho, opts).value);
  }
}
BENCHMARK(BM_RoofRank2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_RoofRank3(benchmark::State& state) {
  const MixedState rho = rank3_state(0.6, 0.25);
  const Monotone& m = monotone("sqrt_tau3");
  RoofOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(convex_roof(m, rho, opts).value);
  }
}
BENCHMARK(BM_RoofRank3)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_WoottersClosedForm(benchmark::State& state) {
  Rng rng(271828);
  const MixedState rho = random_mixed_state(rng, {2, 2}, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wootters_concurrence(rho));
  }
}
BENCHMARK(BM_WoottersClosedForm);

}  // namespace
