#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aegdm/config.hpp"
#include "aegdm/csv.hpp"
#include "aegdm/diagnostics.hpp"
#include "aegdm/problems.hpp"
#include "aegdm/trace.hpp"

namespace aegdm {

/// Exit status shared by the CLI and scripted runs.
enum class RunStatus { ok = 0, run_error = 1, invariant_failure = 2 };

struct RunResult {
  std::optional<Vector> theta_final;  ///< absent when the run aborted
  double f_final = 0.0;               ///< full objective at the last iterate
  std::shared_ptr<const TrajectoryTrace> trace;
  double wall_seconds = 0.0;
  std::vector<BoundReport> reports;

  bool aborted() const { return trace && trace->abort_reason.has_value(); }
  bool checks_passed() const;
  RunStatus status() const;
};

/// Builds the problem a config names. Online problems draw their sequence
/// from `problem.data_seed` with horizon `iters`.
std::unique_ptr<Problem> make_problem(const ExperimentConfig& config);

/// Starting point after the seeded jitter and projection.
Vector starting_point(const ExperimentConfig& config, const Problem& problem, Rng& rng);

RunResult run_experiment(const ExperimentConfig& config);
RunResult run_experiment(const ExperimentConfig& config, const Problem& problem);

/// Writes the trace CSV and report lines to the config's output paths.
void write_outputs(const ExperimentConfig& config, const RunResult& result);

inline constexpr std::array<double, 3> gap_thresholds = {1e-3, 1e-6, 1e-8};

enum class SelectionCriterion { final_f, iterations_to_gap };

struct GridRow {
  double eta = 0.0;
  double final_f = 0.0;
  std::optional<std::size_t> iterations;  ///< iterations to reach `gap`
  bool aborted = false;
};

struct GridResult {
  ExperimentConfig best;
  std::size_t best_index = 0;
  double gap = 0.0;
  double f_star = 0.0;
  std::vector<GridRow> rows;

  /// eta, final_f, iterations_to_gap (NaN when never reached), aborted.
  CsvTable table() const;
};

/// Runs every candidate with the config's seed and picks the best by
/// `criterion`; ties go to the smaller eta. f* is the problem optimum when
/// known, otherwise the lowest final value in the sweep.
GridResult grid_search(const ExperimentConfig& config, std::span<const double> lr_candidates,
                       SelectionCriterion criterion, double gap = 1e-6);

struct ComparisonResult {
  std::vector<std::string> labels;
  std::vector<RunResult> runs;
  double f_star = 0.0;
  std::vector<std::array<std::optional<std::size_t>, gap_thresholds.size()>> iterations_to_gap;

  /// iter, then per optimizer <label>_f, <label>_min_r, <label>_step_norm.
  CsvTable aligned() const;
  /// One row per run: eta, mu, final_f, iterations to each gap threshold.
  CsvTable summary() const;
};

/// Throws MismatchedProblem unless every config shares problem and seed.
ComparisonResult compare_optimizers(std::span<const ExperimentConfig> configs);

}  // namespace aegdm
