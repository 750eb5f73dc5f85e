#include <benchmark/benchmark.h>

#include "quditfid/quditfid.hpp"

namespace {

using namespace qfid;

struct Pair {
  DensityMatrix a;
  DensityMatrix b;
};

Pair make_pair(std::size_t d) {
  RandomSource rng(d);
  DensityMatrix a = random_density(d, d, rng);
  DensityMatrix b = random_density(d, d, rng);
  return {std::move(a), std::move(b)};
}

void BM_alt(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(alt_fidelity(p.a, p.b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_alt)->RangeMultiplier(2)->Range(2, 512)->Complexity(benchmark::oNSquared);

void BM_uhlmann(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uhlmann(p.a, p.b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_uhlmann)->RangeMultiplier(2)->Range(2, 128)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMillisecond);

void BM_super(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(super_fidelity(p.a, p.b));
}
BENCHMARK(BM_super)->RangeMultiplier(4)->Range(2, 512);

void BM_hermitian_eig(benchmark::State& state) {
  RandomSource rng(7);
  const Hamiltonian h = random_hamiltonian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h.matrix()));
}
BENCHMARK(BM_hermitian_eig)->RangeMultiplier(2)->Range(2, 64)->Unit(benchmark::kMicrosecond);

void BM_matmul(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(matmul(p.a.matrix(), p.b.matrix()));
}
BENCHMARK(BM_matmul)->RangeMultiplier(4)->Range(4, 256)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
