#include <benchmark/benchmark.h>

#include "ness/ansatz.hpp"
#include "ness/lindblad.hpp"
#include "ness/optimize.hpp"
#include "ness/sim.hpp"

namespace {

ness::ParamVector random_theta(const ness::AnsatzLayout& layout,
                               std::uint64_t seed) {
  ness::Rng rng(seed);
  return ness::ParamVector::random(layout, rng);
}

void BM_RunCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ness::AnsatzConfig cfg{n, ness::EigType::Entangled, 1, 1};
  const ness::AnsatzLayout layout = ness::resolve_layout(cfg);
  const ness::ParamVector theta = random_theta(layout, 7);
  const ness::Circuit c = ness::build_full_circuit(cfg, theta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ness::run_circuit(c));
  }
}
BENCHMARK(BM_RunCircuit)->Arg(2)->Arg(4)->Arg(6);

void BM_CostExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ness::LindbladModel m = ness::tfim_model(n, 1.0, 1.0, 0.5);
  ness::AnsatzConfig cfg{n, ness::EigType::Entangled, 1, 1};
  const ness::CostEvaluator eval(m, cfg);
  const ness::ParamVector theta = random_theta(eval.layout(), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.exact(theta));
  }
}
BENCHMARK(BM_CostExact)->Arg(2)->Arg(3)->Arg(4);

void BM_SampledExpectation(benchmark::State& state) {
  const int n = 2;
  const ness::LindbladModel m = ness::tfim_model(n, 1.0, 1.0, 0.5);
  ness::AnsatzConfig cfg{n, ness::EigType::Entangled, 1, 1};
  const ness::CostEvaluator eval(m, cfg);
  const ness::ParamVector theta = random_theta(eval.layout(), 13);
  ness::Rng rng(17);
  const int shots = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        eval.sampled(theta, shots, nullptr, nullptr, rng));
  }
}
BENCHMARK(BM_SampledExpectation)->Arg(50)->Arg(200);

}  // namespace
