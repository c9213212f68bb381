#include "aegdm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "aegdm/error.hpp"
#include "aegdm/online.hpp"
#include "aegdm/report_io.hpp"

namespace aegdm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Index dimension_or(const ProblemConfig& p, Index fallback) { return p.dimension > 0 ? p.dimension : fallback; }

std::unique_ptr<Problem> make_finite_sum(const ExperimentConfig& config, LossKind loss) {
  const ProblemConfig& p = config.problem;
  Dataset data = p.data_path ? load_dataset(*p.data_path)
                             : synthetic_dataset(loss, p.rows, dimension_or(p, 20), p.noise, p.data_seed);
  const std::size_t batch = config.batch_size == 0 ? static_cast<std::size_t>(data.rows()) : config.batch_size;
  return std::make_unique<FiniteSumProblem>(loss, std::move(data), batch, p.weight_decay, p.start);
}

bool finite(const Vector& v) { return v.allFinite(); }

}  // namespace

bool RunResult::checks_passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.satisfied; });
}

RunStatus RunResult::status() const {
  if (aborted()) return RunStatus::run_error;
  return checks_passed() ? RunStatus::ok : RunStatus::invariant_failure;
}

std::unique_ptr<Problem> make_problem(const ExperimentConfig& config) {
  const ProblemConfig& p = config.problem;
  if (p.id == "rosenbrock") {
    if (p.dimension != 0 && p.dimension != 2) throw RangeError("rosenbrock is two-dimensional");
    return std::make_unique<Rosenbrock>(p.start.value_or(Rosenbrock::default_start()));
  }
  if (p.id == "quadratic") {
    Quadratic q = Quadratic::random(dimension_or(p, 10), p.condition, p.data_seed);
    if (!p.start) return std::make_unique<Quadratic>(std::move(q));
    return std::make_unique<Quadratic>(q.hessian(), q.linear_term(), *p.start);
  }
  if (p.id == "logistic") return make_finite_sum(config, LossKind::logistic);
  if (p.id == "least_squares") return make_finite_sum(config, LossKind::least_squares);
  if (p.id == "online_quadratic") {
    const Index dim = dimension_or(p, 5);
    Rng rng(p.data_seed);
    const Box feasible = config.projection.value_or(Box{0.0, 4.0});
    OnlineSequence seq = online_quadratic_sequence(config.iters, dim, rng, Box{1.0, 3.0}, feasible);
    return std::make_unique<OnlineQuadratic>(std::move(seq), p.start.value_or(Vector::Zero(dim)));
  }
  throw RangeError("unknown problem id '" + p.id + "'");
}

Vector starting_point(const ExperimentConfig& config, const Problem& problem, Rng& rng) {
  Vector theta = problem.initial_point();
  if (theta.size() != problem.dimension()) throw RangeError("start point has the wrong dimension");
  if (config.problem.start_jitter > 0.0) {
    std::normal_distribution<double> normal(0.0, config.problem.start_jitter);
    for (Index i = 0; i < theta.size(); ++i) theta[i] += normal(rng);
  }
  if (config.projection) theta = config.projection->clip(theta);
  return theta;
}

RunResult run_experiment(const ExperimentConfig& config) {
  const auto problem = make_problem(config);
  return run_experiment(config, *problem);
}

RunResult run_experiment(const ExperimentConfig& config, const Problem& problem) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  auto trace = std::make_shared<TrajectoryTrace>();
  Optimizer opt(config.optimizer, config.hp);
  TraceConfig& tc = trace->config;
  tc.problem_id = problem.id();
  tc.optimizer = config.optimizer;
  tc.eta = config.hp.eta;
  tc.mu = opt.effective_mu();
  tc.c = config.hp.c;
  tc.momentum = config.hp.momentum;
  tc.seed = config.seed;
  tc.dimension = problem.dimension();
  tc.projection = config.projection;
  tc.constant_schedule = config.schedule.kind == ScheduleKind::constant || config.schedule.at_step >= config.iters;
  tc.stochastic = problem.stochastic();

  Rng rng(config.seed);
  EnergyMonotoneAccumulator monotone;
  const bool energy = opt.uses_energy();
  const auto abort = [&](std::string reason) { trace->abort_reason = std::move(reason); };

  try {
    const Vector theta0 = starting_point(config, problem, rng);
    Evaluation eval = problem.sample(theta0, 0, rng);
    if (!std::isfinite(eval.value) || !finite(eval.gradient)) {
      abort("non-finite objective at t=0");
    } else if (energy && !(eval.value + config.hp.c > 0.0)) {
      abort("f + c <= 0 at t=0");
    } else {
      opt.initialize(theta0, eval);
      if (energy) trace->r0_sample_ids = eval.sample_ids;
    }

    trace->steps.reserve(trace->abort_reason ? 0 : config.iters);
    for (std::size_t t = 0; t < config.iters && !trace->abort_reason; ++t) {
      if (t > 0) {
        eval = problem.sample(opt.theta(), t, rng);
        if (!std::isfinite(eval.value) || !finite(eval.gradient)) {
          abort("non-finite objective at t=" + std::to_string(t));
          break;
        }
        if (energy && !(eval.value + config.hp.c > 0.0)) {
          abort("f + c <= 0 at t=" + std::to_string(t));
          break;
        }
      }
      const double eta = config.schedule.rate(config.hp.eta, t);
      const bool keep = config.granularity == TraceGranularity::full || t % config.vector_stride == 0;

      TraceStep rec;
      rec.t = t;
      rec.eta = eta;
      rec.value = eval.value;
      rec.grad_norm = eval.gradient.norm();
      rec.min_r = energy ? opt.energy().minCoeff() : kNaN;
      const Vector theta_before = opt.theta();
      const Vector r_before = energy ? opt.energy() : Vector();
      if (keep) {
        rec.theta = theta_before;
        rec.g = eval.gradient;
        rec.r = r_before;
        rec.m = opt.momentum();
      }

      Optimizer::Step step = opt.step(eval, eta);
      if (config.projection) {
        const Vector clipped = config.projection->clip(opt.theta());
        step.step = clipped - theta_before;
        opt.set_theta(clipped);
      }
      rec.step_norm = step.step.norm();
      if (energy) monotone.add(r_before, opt.energy(), step.v, eta);
      if (keep) {
        rec.v = std::move(step.v);
        rec.step = std::move(step.step);
      }
      trace->steps.push_back(std::move(rec));

      if (!finite(opt.theta())) {
        abort("non-finite iterate after t=" + std::to_string(t));
      } else if (energy && !(opt.energy().array() >= 0.0).all()) {
        abort("energy lost positivity after t=" + std::to_string(t));
      }
    }
  } catch (const NonPositiveShiftedValue& e) {
    abort(e.what());
  }

  if (opt.initialized()) {
    trace->theta_final = opt.theta();
    trace->r_final = energy ? opt.energy() : Vector();
    trace->m_final = opt.momentum();
  }

  RunResult result;
  if (!trace->abort_reason && opt.initialized()) {
    const double f = problem.value(trace->theta_final);
    if (std::isfinite(f)) trace->value_final = f;
    result.theta_final = trace->theta_final;
    result.f_final = f;
  } else {
    result.f_final = kNaN;
  }

  if (const auto* online = dynamic_cast<const OnlineQuadratic*>(&problem);
      online && online->sequence().comparator() && !trace->empty()) {
    trace->regret = compute_regret(*trace, online->sequence());
  }

  if (energy && !trace->empty()) {
    if (trace->full() && !trace->abort_reason) {
      result.reports = standard_checks(*trace);
      const auto* online = dynamic_cast<const OnlineQuadratic*>(&problem);
      if (online && config.projection && tc.constant_schedule && trace->length() == online->sequence().horizon()) {
        result.reports.push_back(check_regret_bound(*trace, online->sequence()));
      }
    } else {
      result.reports.push_back(monotone.report());
    }
  }

  result.trace = trace;
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

void write_outputs(const ExperimentConfig& config, const RunResult& result) {
  if (config.trace_path) emit_csv(*result.trace, *config.trace_path);
  if (config.report_path) write_text(*config.report_path, format_reports(result.reports));
}

CsvTable GridResult::table() const {
  CsvTable t;
  t.header = {"eta", "final_f", "iterations_to_gap", "aborted"};
  for (const GridRow& row : rows) {
    t.rows.push_back({row.eta, row.final_f, row.iterations ? static_cast<double>(*row.iterations) : kNaN,
                      row.aborted ? 1.0 : 0.0});
  }
  return t;
}

GridResult grid_search(const ExperimentConfig& config, std::span<const double> lr_candidates,
                       SelectionCriterion criterion, double gap) {
  if (lr_candidates.empty()) throw RangeError("grid search needs at least one candidate");
  const auto problem = make_problem(config);
  GridResult result;
  result.gap = gap;
  std::vector<std::shared_ptr<const TrajectoryTrace>> traces;
  for (double eta : lr_candidates) {
    ExperimentConfig candidate = config;
    candidate.hp.eta = eta;
    RunResult run = run_experiment(candidate, *problem);
    GridRow row;
    row.eta = eta;
    row.final_f = run.f_final;
    row.aborted = run.aborted();
    result.rows.push_back(row);
    traces.push_back(run.trace);
  }

  if (const auto known = problem->optimal_value()) {
    result.f_star = *known;
  } else {
    result.f_star = std::numeric_limits<double>::infinity();
    for (const GridRow& row : result.rows) {
      if (std::isfinite(row.final_f)) result.f_star = std::min(result.f_star, row.final_f);
    }
  }
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    if (!result.rows[k].aborted) result.rows[k].iterations = iterations_to_gap(*traces[k], result.f_star, gap);
  }

  const auto score = [&](const GridRow& row) {
    constexpr double worst = std::numeric_limits<double>::infinity();
    if (row.aborted) return worst;
    if (criterion == SelectionCriterion::final_f) return std::isfinite(row.final_f) ? row.final_f : worst;
    return row.iterations ? static_cast<double>(*row.iterations) : worst;
  };
  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    const double a = score(result.rows[k]);
    const double b = score(result.rows[result.best_index]);
    if (a < b || (a == b && result.rows[k].eta < result.rows[result.best_index].eta)) result.best_index = k;
  }
  result.best = config;
  result.best.hp.eta = result.rows[result.best_index].eta;
  return result;
}

CsvTable ComparisonResult::aligned() const {
  CsvTable t;
  t.header = {"iter"};
  std::size_t longest = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    t.header.push_back(labels[k] + "_f");
    t.header.push_back(labels[k] + "_min_r");
    t.header.push_back(labels[k] + "_step_norm");
    longest = std::max(longest, runs[k].trace->length());
  }
  for (std::size_t i = 0; i < longest; ++i) {
    std::vector<double> row{static_cast<double>(i)};
    for (const RunResult& run : runs) {
      if (i < run.trace->length()) {
        const TraceStep& s = run.trace->steps[i];
        row.insert(row.end(), {s.value, s.min_r, s.step_norm});
      } else {
        row.insert(row.end(), {kNaN, kNaN, kNaN});
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable ComparisonResult::summary() const {
  CsvTable t;
  t.header = {"run", "eta", "mu", "final_f", "iters_gap_1e-3", "iters_gap_1e-6", "iters_gap_1e-8"};
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const TraceConfig& c = runs[k].trace->config;
    std::vector<double> row{static_cast<double>(k), c.eta, c.mu, runs[k].f_final};
    for (const auto& it : iterations_to_gap[k]) row.push_back(it ? static_cast<double>(*it) : kNaN);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ComparisonResult compare_optimizers(std::span<const ExperimentConfig> configs) {
  if (configs.empty()) throw RangeError("nothing to compare");
  for (const ExperimentConfig& c : configs) {
    if (!same_problem(c.problem, configs.front().problem) || c.seed != configs.front().seed ||
        c.iters != configs.front().iters || c.batch_size != configs.front().batch_size) {
      throw MismatchedProblem("compared runs must share problem, seed, iteration budget and batch size");
    }
  }
  const auto problem = make_problem(configs.front());
  ComparisonResult result;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    std::string label(to_string(configs[k].optimizer));
    const auto dup = std::count_if(configs.begin(), configs.begin() + static_cast<std::ptrdiff_t>(k),
                                   [&](const ExperimentConfig& c) { return c.optimizer == configs[k].optimizer; });
    if (dup > 0) label += "_" + std::to_string(dup + 1);
    result.labels.push_back(std::move(label));
    result.runs.push_back(run_experiment(configs[k], *problem));
  }
  if (const auto known = problem->optimal_value()) {
    result.f_star = *known;
  } else {
    result.f_star = std::numeric_limits<double>::infinity();
    for (const RunResult& run : result.runs) {
      for (const TraceStep& s : run.trace->steps) result.f_star = std::min(result.f_star, s.value);
      if (run.trace->value_final) result.f_star = std::min(result.f_star, *run.trace->value_final);
    }
  }
  for (const RunResult& run : result.runs) {
    std::array<std::optional<std::size_t>, gap_thresholds.size()> gaps;
    for (std::size_t g = 0; g < gap_thresholds.size(); ++g) {
      gaps[g] = iterations_to_gap(*run.trace, result.f_star, gap_thresholds[g]);
    }
    result.iterations_to_gap.push_back(gaps);
  }
  return result;
}

}  // namespace aegdm
