#include <benchmark/benchmark.h>

#include "aegdm/diagnostics.hpp"
#include "aegdm/harness.hpp"
#include "aegdm/optimizer.hpp"
#include "aegdm/problems.hpp"

using namespace aegdm;

static void BM_AegdmStep(benchmark::State& state) {
  const Index n = state.range(0);
  HyperParams hp;
  Evaluation e;
  e.value = 3.0;
  e.gradient = Vector::LinSpaced(n, -1.0, 1.0);
  OptimizerState s = initial_energy_state(Vector::Zero(n), e, hp.c);
  for (auto _ : state) {
    StepOutput out = aegdm_step(s, e, hp);
    benchmark::DoNotOptimize(out.new_state.theta.data());
    s.m = std::move(out.new_state.m);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_AegdmStep)->RangeMultiplier(8)->Range(8, 4096);

static void BM_AdamStep(benchmark::State& state) {
  const Index n = state.range(0);
  HyperParams hp;
  hp.eta = 1e-3;
  Evaluation e;
  e.gradient = Vector::LinSpaced(n, -1.0, 1.0);
  const BaselineState s = initial_baseline_state(Vector::Zero(n));
  for (auto _ : state) {
    BaselineStepOutput out = adam_step(s, e, hp);
    benchmark::DoNotOptimize(out.new_state.theta.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_AdamStep)->RangeMultiplier(8)->Range(8, 4096);

static void BM_LogisticMinibatch(benchmark::State& state) {
  const FiniteSumProblem p(LossKind::logistic, synthetic_dataset(LossKind::logistic, 200, 20, 0.1, 1),
                           static_cast<std::size_t>(state.range(0)));
  const Vector theta = Vector::Constant(20, 0.1);
  Rng rng(1);
  std::size_t t = 0;
  for (auto _ : state) {
    Evaluation e = p.sample(theta, t++, rng);
    benchmark::DoNotOptimize(e.value);
  }
}
BENCHMARK(BM_LogisticMinibatch)->Arg(16)->Arg(200);

static void BM_RosenbrockRun(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.hp.eta = 2e-5;
  cfg.iters = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RunResult r = run_experiment(cfg);
    benchmark::DoNotOptimize(r.f_final);
  }
}
BENCHMARK(BM_RosenbrockRun)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_StandardChecks(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.hp.eta = 2e-5;
  cfg.iters = 5000;
  const RunResult r = run_experiment(cfg);
  for (auto _ : state) {
    auto reports = standard_checks(*r.trace);
    benchmark::DoNotOptimize(reports.data());
  }
}
BENCHMARK(BM_StandardChecks)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
