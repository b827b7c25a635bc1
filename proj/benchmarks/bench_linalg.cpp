#include <benchmark/benchmark.h>

#include <random>

#include <belltol/linalg.hpp>
#include <belltol/states.hpp>

using namespace belltol;

namespace {

CMatrix random_hermitian(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (auto& z : a.entries()) z = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

void BM_EigHermitian(benchmark::State& state) {
  const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(2, 64);

void BM_Kron(benchmark::State& state) {
  const auto a = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
  const auto b = random_hermitian(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->RangeMultiplier(2)->Range(2, 32);

void BM_ContractExcept(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto rho = ghz(2, n);
  const std::vector<std::size_t> dims(n, 2);
  const CMatrix x{{0, 1}, {1, 0}};
  std::vector<const CMatrix*> ops(n, &x);
  for (auto _ : state) benchmark::DoNotOptimize(contract_except(rho.matrix(), dims, 0, ops));
}
BENCHMARK(BM_ContractExcept)->DenseRange(2, 8, 2);

}  // namespace
