#include <benchmark/benchmark.h>

#include "ness/lindblad.hpp"
#include "ness/pauli.hpp"

namespace {

void BM_PauliCompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ness::LindbladModel m = ness::tfim_model(n, 1.0, 1.0, 0.5);
  const ness::PauliSum l = ness::liouvillian_vector(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ness::compose(ness::adjoint(l), l));
  }
}
BENCHMARK(BM_PauliCompose)->Arg(2)->Arg(3)->Arg(4);

void BM_CostOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ness::LindbladModel m = ness::tfim_model(n, 1.0, 1.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ness::cost_operator(m));
  }
}
BENCHMARK(BM_CostOperator)->Arg(2)->Arg(4);

void BM_ToDense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ness::LindbladModel m = ness::tfim_model(n, 1.0, 1.0, 0.5);
  const ness::PauliSum l = ness::liouvillian_vector(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ness::to_dense(l));
  }
}
BENCHMARK(BM_ToDense)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
