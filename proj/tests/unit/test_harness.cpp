#include <doctest.h>

#include <cmath>
#include <vector>

#include "aegdm/error.hpp"
#include "aegdm/harness.hpp"
#include "test_helpers.hpp"

using namespace aegdm;
using aegdm::test::vec;

namespace {

ExperimentConfig rosenbrock(OptimizerKind kind, double eta, std::size_t iters) {
  ExperimentConfig cfg;
  cfg.optimizer = kind;
  cfg.hp.eta = eta;
  cfg.iters = iters;
  return cfg;
}

}  // namespace

TEST_CASE("single step run") {
  const RunResult res = run_experiment(rosenbrock(OptimizerKind::aegdm, 1e-4, 1));
  REQUIRE(res.trace->length() == 1);
  CHECK(res.trace->steps[0].value == 16916.0);
  CHECK(res.theta_final);
  CHECK(res.status() == RunStatus::ok);
  ExperimentConfig zero = rosenbrock(OptimizerKind::aegdm, 1e-4, 1);
  zero.iters = 0;
  CHECK_THROWS_AS(run_experiment(zero), RangeError);
}

TEST_CASE("tuned AEGDM drives the Rosenbrock gap below 1e-8") {
  const RunResult res = run_experiment(rosenbrock(OptimizerKind::aegdm, 2e-5, 5000));
  CHECK(res.f_final < 1e-8);
  CHECK(res.checks_passed());
  const auto& steps = res.trace->steps;
  const std::size_t decile = steps.size() / 10;
  double first = 0.0, last = 0.0;
  for (std::size_t k = 0; k < decile; ++k) {
    first += steps[k].step_norm;
    last += steps[steps.size() - 1 - k].step_norm;
  }
  CHECK(last < first);
}

TEST_CASE("runs are deterministic") {
  ExperimentConfig cfg;
  cfg.problem.id = "logistic";
  cfg.batch_size = 16;
  cfg.iters = 200;
  cfg.seed = 42;
  const std::string a = format_csv(trace_table(*run_experiment(cfg).trace));
  const std::string b = format_csv(trace_table(*run_experiment(cfg).trace));
  CHECK(a == b);
  cfg.seed = 43;
  CHECK(format_csv(trace_table(*run_experiment(cfg).trace)) != a);
}

TEST_CASE("stochastic runs record the r0 minibatch") {
  ExperimentConfig cfg;
  cfg.problem.id = "logistic";
  cfg.batch_size = 8;
  cfg.iters = 5;
  const RunResult res = run_experiment(cfg);
  REQUIRE(res.trace->r0_sample_ids);
  CHECK(res.trace->r0_sample_ids->size() == 8);
  CHECK(res.trace->steps[0].r[0] == std::sqrt(res.trace->steps[0].value + 1.0));
}

TEST_CASE("step decay schedule") {
  ExperimentConfig cfg = rosenbrock(OptimizerKind::aegdm, 1e-4, 300);
  cfg.schedule = LrSchedule::parse("step_decay(10,150)");
  const RunResult res = run_experiment(cfg);
  CHECK(res.trace->steps[149].eta == 1e-4);
  CHECK(res.trace->steps[150].eta == 1e-4 / 10);
  CHECK_FALSE(res.trace->config.constant_schedule);
  REQUIRE(res.reports.size() >= 1);
  CHECK(res.reports.front().bound_id == "energy_monotone");
  CHECK(res.checks_passed());
}

TEST_CASE("scalar-only granularity") {
  ExperimentConfig cfg = rosenbrock(OptimizerKind::aegdm, 1e-4, 95);
  cfg.granularity = TraceGranularity::scalar_only;
  cfg.vector_stride = 10;
  const RunResult res = run_experiment(cfg);
  CHECK(res.trace->steps[10].has_vectors());
  CHECK_FALSE(res.trace->steps[11].has_vectors());
  REQUIRE(res.reports.size() == 1);
  CHECK(res.reports[0].bound_id == "energy_monotone");
  CHECK(res.reports[0].constants.at("steps") == 95.0);
}

TEST_CASE("divergent runs abort with a reason") {
  const RunResult res = run_experiment(rosenbrock(OptimizerKind::sgdm, 0.1, 1000));
  CHECK(res.aborted());
  CHECK(res.status() == RunStatus::run_error);
  CHECK(res.trace->abort_reason->find("non-finite") != std::string::npos);
  CHECK(res.trace->length() < 1000);

  ExperimentConfig negative = rosenbrock(OptimizerKind::aegdm, 0.01, 10);
  negative.problem.id = "quadratic";
  negative.hp.c = -1e6;
  const RunResult bad = run_experiment(negative);
  CHECK(bad.aborted());
  CHECK(bad.trace->abort_reason->find("f + c") != std::string::npos);
}

TEST_CASE("grid search") {
  ExperimentConfig cfg = rosenbrock(OptimizerKind::aegdm, 1.0, 3000);
  const std::vector<double> one = {2e-5};
  CHECK(grid_search(cfg, one, SelectionCriterion::final_f).best.hp.eta == 2e-5);

  const std::vector<double> lrs = {1e-5, 2e-5, 5e-5, 1e-4};
  const GridResult g = grid_search(cfg, lrs, SelectionCriterion::iterations_to_gap, 1e-6);
  std::size_t worst = 0;
  for (const GridRow& row : g.rows) worst = std::max(worst, row.iterations.value_or(cfg.iters + 1));
  REQUIRE(g.rows[g.best_index].iterations);
  CHECK(*g.rows[g.best_index].iterations < worst);
  CHECK(g.table().rows.size() == 4);

  ExperimentConfig still = rosenbrock(OptimizerKind::aegdm, 1.0, 5);
  still.problem.start = vec({1.0, 1.0});
  const std::vector<double> same = {0.3, 0.1, 0.2};
  CHECK(grid_search(still, same, SelectionCriterion::final_f).best.hp.eta == 0.1);
  CHECK_THROWS(grid_search(still, std::vector<double>{}, SelectionCriterion::final_f));
}

TEST_CASE("compare optimizers") {
  std::vector<ExperimentConfig> twins = {rosenbrock(OptimizerKind::aegdm, 1e-4, 100),
                                         rosenbrock(OptimizerKind::aegdm, 1e-4, 100)};
  const ComparisonResult same = compare_optimizers(twins);
  const CsvTable aligned = same.aligned();
  CHECK(aligned.header.size() == 7);
  for (const auto& row : aligned.rows) {
    CHECK(row[1] == row[4]);
    CHECK(row[2] == row[5]);
    CHECK(row[3] == row[6]);
  }

  std::vector<ExperimentConfig> trio = {rosenbrock(OptimizerKind::aegdm, 2e-5, 20000),
                                        rosenbrock(OptimizerKind::aegd, 5e-5, 20000),
                                        rosenbrock(OptimizerKind::sgdm, 2e-4, 20000)};
  const ComparisonResult cmp = compare_optimizers(trio);
  REQUIRE(cmp.iterations_to_gap[0][1]);
  REQUIRE(cmp.iterations_to_gap[1][1]);
  REQUIRE(cmp.iterations_to_gap[2][1]);
  CHECK(*cmp.iterations_to_gap[0][1] < *cmp.iterations_to_gap[1][1]);
  CHECK(*cmp.iterations_to_gap[0][1] < *cmp.iterations_to_gap[2][1]);
  CHECK(cmp.summary().rows.size() == 3);

  std::vector<ExperimentConfig> mixed = trio;
  mixed[1].seed = 3;
  CHECK_THROWS_AS(compare_optimizers(mixed), MismatchedProblem);
}
