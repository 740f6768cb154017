#include <benchmark/benchmark.h>

#include "kerrcomm/lyapunov.hpp"
#include "kerrcomm/steady_state.hpp"
#include "kerrcomm/sweep.hpp"

using namespace kerrcomm;

namespace {

SweepSpec grid() {
  SweepSpec spec;
  spec.axis1 = Axis{SweepParameter::delta_m_eff, -2.0, 0.0, 200};
  spec.axis2 = Axis{SweepParameter::delta_c_eff, 0.0, 2.0, 50};
  spec.fixed.delta_a = -1.0;
  spec.pairs = {ModePair::parse("mb"), ModePair::parse("ac"), ModePair::parse("mc")};
  return spec;
}

DriftDiffusion reference_point() {
  EffectiveInputs in;
  in.delta_k = 0.1;
  return build_normalized(operating_point_direct(in));
}

}  // namespace

static void BM_SweepSerial(benchmark::State& state) {
  const auto spec = grid();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * 200 * 50);
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

static void BM_SweepParallel(benchmark::State& state) {
  const auto spec = grid();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, threads));
  state.SetItemsProcessed(state.iterations() * 200 * 50);
}
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_LyapunovSchur(benchmark::State& state) {
  const auto dd = reference_point();
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov_schur(dd.drift, dd.diffusion));
}
BENCHMARK(BM_LyapunovSchur);

static void BM_LyapunovKronecker(benchmark::State& state) {
  const auto dd = reference_point();
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov_kronecker(dd.drift, dd.diffusion));
}
BENCHMARK(BM_LyapunovKronecker);

BENCHMARK_MAIN();
