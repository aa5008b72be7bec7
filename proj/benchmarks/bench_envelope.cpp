#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "roofscale/envelope.hpp"
#include "roofscale/ghzw.hpp"

using namespace roofscale;

namespace {

void BM_CurveConvexify(benchmark::State& state) {
  const std::vector<CurveSample> grid =
      curve_grid(standard_family(), 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(convexify_curve(grid));
  }
}
BENCHMARK(BM_CurveConvexify)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SurfaceConvexify(benchmark::State& state) {
  const std::vector<SurfaceSample> grid =
      surface_grid(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(surface_convexify(grid));
  }
}
BENCHMARK(BM_SurfaceConvexify)
    ->Arg(40)
    ->Arg(100)
    ->Arg(200)
    ->Unit(benchmark::kMillisecond);

void BM_LowerEnvelope1D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    xs[i] = x;
    // nonconvex test shape with two wells
    ys[i] = 0.1 * x + 0.5 * std::sin(9.0 * x) * std::sin(9.0 * x);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_envelope(xs, ys));
  }
}
BENCHMARK(BM_LowerEnvelope1D)->Arg(1000)->Arg(100000);

}  // namespace
