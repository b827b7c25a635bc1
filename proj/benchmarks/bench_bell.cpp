#include <benchmark/benchmark.h>

#include <random>

#include <belltol/bell_scenario.hpp>
#include <belltol/local_polytope.hpp>
#include <belltol/quantum_value.hpp>
#include <belltol/simplex.hpp>
#include <belltol/states.hpp>

using namespace belltol;

namespace {

void BM_LhvMermin(benchmark::State& state) {
  const auto f = mermin(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lhv_bounds(f));
}
BENCHMARK(BM_LhvMermin)->DenseRange(2, 8, 2);

void BM_LhvThreads(benchmark::State& state) {
  const auto f = mermin(8);
  const EnumerationOptions opt{.threads = static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(lhv_bounds(f, opt));
}
BENCHMARK(BM_LhvThreads)->Arg(1)->Arg(4)->UseRealTime();

void BM_SeesawGhz(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto f = mermin(n);
  const auto rho = ghz(2, n);
  const SeesawConfig cfg{.restarts = 4};
  for (auto _ : state) benchmark::DoNotOptimize(seesaw(f, rho, cfg));
}
BENCHMARK(BM_SeesawGhz)->DenseRange(2, 6, 1)->Unit(benchmark::kMillisecond);

void BM_SimplexRandom(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0)), n = 3 * m;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  LinearProgram lp(m, n);
  for (auto& a : lp.a) a = u(rng);
  for (auto& b : lp.rhs) b = u(rng) * static_cast<double>(n);
  for (auto& c : lp.objective) c = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(simplex_max(lp));
}
BENCHMARK(BM_SimplexRandom)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond);

void BM_CriticalVisibility(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto rho = ghz(2, n);
  const auto meas = seesaw(mermin(n), rho, {.restarts = 2}).assignment;
  for (auto _ : state) benchmark::DoNotOptimize(critical_visibility(rho, NoiseSpec::white(), meas));
}
BENCHMARK(BM_CriticalVisibility)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

}  // namespace
