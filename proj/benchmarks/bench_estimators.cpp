// Gain-form vs information-form Kalman updates, and one IRS epoch.

#include "irs/baselines.hpp"
#include "irs/estimator.hpp"
#include "irs/simgen.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace irs;

struct Instance {
  ModelState prev;
  EpochData data;
  StateTransition trans;
};

Instance make_instance(Index n, Index p) {
  Rng rng(42);
  std::normal_distribution<double> normal;
  EpochData data;
  data.X = Matrix::NullaryExpr(n, p, [&] { return normal(rng); });
  const Vector theta = Vector::NullaryExpr(p, [&] { return normal(rng); });
  data.y = data.X * theta + Vector::NullaryExpr(n, [&] { return normal(rng); });
  return {ModelState(Vector::Zero(p), Matrix::Identity(p, p), 1.0, 0), std::move(data),
          StateTransition::identity(p, 0.1)};
}

void BM_KalmanGain(benchmark::State& state) {
  const Instance in = make_instance(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kalman_step(in.prev, in.data, in.trans, NoiseSpec::iid(1.0)));
  }
}

void BM_KalmanInformation(benchmark::State& state) {
  const Instance in = make_instance(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kalman_step_fast(in.prev, in.data, in.trans, NoiseSpec::iid(1.0)));
  }
}

void BM_IrsStep(benchmark::State& state) {
  const Instance in = make_instance(state.range(0), state.range(1));
  const Hyperparams hp(0.1, 1.0);
  StepDiagnostics diag;
  for (auto _ : state) {
    benchmark::DoNotOptimize(irs_step(in.prev, in.data, in.trans, hp, {}, &diag));
  }
  state.counters["iterations"] = diag.iterations;
}

}  // namespace

BENCHMARK(BM_KalmanGain)->Args({200, 50})->Args({2000, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KalmanInformation)->Args({200, 50})->Args({2000, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IrsStep)->Args({100, 50})->Args({400, 200})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
