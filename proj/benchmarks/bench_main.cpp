#include "isobary/cube_slice.hpp"
#include "isobary/halfspace_solver.hpp"
#include "isobary/irwin_hall.hpp"
#include "isobary/mc_oracle.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace isobary;

void BM_BuildTail(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(IrwinHallTail::build(n));
}
BENCHMARK(BM_BuildTail)->Arg(10)->Arg(20)->Arg(40);

void BM_DerivedExact(benchmark::State& state) {
  const auto& d = shared_irwin_hall(static_cast<int>(state.range(0)));
  const Rational t(3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(derived_quantity(d, t));
}
BENCHMARK(BM_DerivedExact)->Arg(10)->Arg(20)->Arg(40);

void BM_DerivedFloat(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(derived_quantity_float(n, 0.43));
}
BENCHMARK(BM_DerivedFloat)->Arg(20)->Arg(100)->Arg(200);

void BM_SliceExact(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = 0.3 + 0.1 * static_cast<double>(i);
  const Halfspace h = normalized(theta, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(slice_stats(h));
}
BENCHMARK(BM_SliceExact)->Arg(3)->Arg(6)->Arg(10);

void BM_SliceFloat(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = 0.3 + 0.1 * static_cast<double>(i);
  const Halfspace h = normalized(theta, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(slice_stats_float(h));
}
BENCHMARK(BM_SliceFloat)->Arg(6)->Arg(12)->Arg(20);

void BM_Solve(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 - 0.25 * static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(solve(x));
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CubeSample(benchmark::State& state) {
  std::vector<double> u(8);
  std::uint64_t i = 0;
  for (auto _ : state) {
    cube_sample(1, i++, u);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_CubeSample);

}  // namespace

BENCHMARK_MAIN();
