// Serial reference vs OpenMP backend for the two parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>

#include "tneutral/horseshoe.hpp"
#include "tneutral/kernels.hpp"
#include "tneutral/search.hpp"
#include "tneutral/thermo.hpp"

using namespace tneutral;

namespace {

TwoPotentialSystem bench_system() {
  return TwoPotentialSystem(Sft::full_shift(3),
                            LocallyConstantPotential::symbolwise({1.0, 2.0, 1.5}),
                            LocallyConstantPotential::symbolwise({-1.0, -0.5, -2.0}));
}

void BM_EvaluateGrid(benchmark::State& state, Backend backend) {
  const auto sys = bench_system();
  const auto axis = linspace(-2.0, 2.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_grid(sys, axis, axis, backend));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_LocalEntropySamples(benchmark::State& state, Backend backend) {
  const auto m = equilibrium_of(Sft::build({{1, 1}, {1, 0}}),
                                LocallyConstantPotential::constant(2, 0.0))
                     .measure;
  const ShiftMetric metric(std::exp(-1.0));
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_entropy_samples(m, metric, 1.0, 400, samples, 1, backend));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvaluateGrid, serial, Backend::Serial)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(BM_EvaluateGrid, parallel, Backend::Parallel)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(BM_LocalEntropySamples, serial, Backend::Serial)->Arg(200)->Arg(2000);
BENCHMARK_CAPTURE(BM_LocalEntropySamples, parallel, Backend::Parallel)->Arg(200)->Arg(2000);

BENCHMARK_MAIN();
