// aegdm-bench: run, tune and compare optimizers from config files.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aegdm/config.hpp"
#include "aegdm/csv.hpp"
#include "aegdm/error.hpp"
#include "aegdm/harness.hpp"
#include "aegdm/report_io.hpp"

namespace {

using namespace aegdm;

/// Flags that mirror config keys. Unset flags leave file values alone.
struct Overrides {
  std::optional<std::string> optimizer, problem, lr, mu, c, iters, batch_size, seed, schedule, out;

  void attach(CLI::App* app) {
    app->add_option("--optimizer", optimizer, "sgd|sgdm|gdm|adam|aegd|aegdm");
    app->add_option("--problem", problem, "rosenbrock|quadratic|logistic|least_squares|online_quadratic");
    app->add_option("--lr", lr, "base learning rate eta");
    app->add_option("--mu", mu, "momentum in [0,1)");
    app->add_option("--c", c, "energy shift c");
    app->add_option("--iters", iters, "number of steps T");
    app->add_option("--batch-size", batch_size, "minibatch size b, 0 for full batch");
    app->add_option("--seed", seed, "RNG seed");
    app->add_option("--schedule", schedule, "constant or step_decay(factor,at_step)");
    app->add_option("--out", out, "output CSV path");
  }

  void apply(ConfigBuilder& b) const {
    const auto put = [&b](const std::optional<std::string>& v, const char* section, const char* key) {
      if (v) b.set(section, key, *v);
    };
    put(optimizer, "optimizer", "id");
    put(problem, "problem", "id");
    put(lr, "optimizer", "lr");
    put(mu, "optimizer", "mu");
    put(c, "optimizer", "c");
    put(iters, "run", "iters");
    put(batch_size, "run", "batch_size");
    put(seed, "run", "seed");
    put(schedule, "run", "schedule");
  }
};

ConfigBuilder load_builder(const std::string& path) {
  ConfigBuilder b;
  if (!path.empty()) b.load(read_text(path));
  return b;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) values.push_back(parse_real(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    names.push_back(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return names;
}

std::string gap_text(const std::optional<std::size_t>& it) { return it ? std::to_string(*it) : "never"; }

int run_command(const std::string& config_path, const Overrides& flags) {
  ConfigBuilder b = load_builder(config_path);
  flags.apply(b);
  ExperimentConfig cfg = b.build();
  if (flags.out) cfg.trace_path = *flags.out;

  const RunResult result = run_experiment(cfg);
  write_outputs(cfg, result);
  std::cout << format_reports(result.reports);
  std::cout << "# final_f=" << format_real(result.f_final) << " steps=" << result.trace->length() << "\n";
  if (result.aborted()) std::cerr << "aborted: " << *result.trace->abort_reason << "\n";
  return static_cast<int>(result.status());
}

int grid_command(const std::string& config_path, const Overrides& flags, const std::string& candidates,
                 const std::string& criterion, double gap) {
  ConfigBuilder b = load_builder(config_path);
  flags.apply(b);
  const ExperimentConfig cfg = b.build();
  if (criterion != "final_f" && criterion != "iterations_to_gap") {
    throw RangeError("criterion must be final_f or iterations_to_gap");
  }
  const SelectionCriterion crit =
      criterion == "final_f" ? SelectionCriterion::final_f : SelectionCriterion::iterations_to_gap;
  const std::vector<double> lrs = parse_list(candidates);
  const GridResult grid = grid_search(cfg, lrs, crit, gap);
  if (flags.out) emit_csv(grid.table(), *flags.out);
  std::cout << format_csv(grid.table());
  std::cout << "# best_eta=" << format_real(grid.best.hp.eta) << "\n";
  return 0;
}

int compare_command(const std::string& config_path, const Overrides& flags, const std::string& optimizers,
                    const std::string& lrs_text, const std::string& summary_path) {
  const std::vector<std::string> names = split_names(optimizers);
  const std::vector<double> lrs = lrs_text.empty() ? std::vector<double>{} : parse_list(lrs_text);
  if (!lrs.empty() && lrs.size() != names.size()) throw RangeError("--lrs needs one rate per optimizer");
  std::vector<ExperimentConfig> configs;
  for (std::size_t k = 0; k < names.size(); ++k) {
    ConfigBuilder b = load_builder(config_path);
    flags.apply(b);
    b.set("optimizer", "id", names[k]);
    if (!lrs.empty()) b.set("optimizer", "lr", format_real(lrs[k]));
    configs.push_back(b.build());
  }
  const ComparisonResult cmp = compare_optimizers(configs);
  if (flags.out) emit_csv(cmp.aligned(), *flags.out);
  if (!summary_path.empty()) emit_csv(cmp.summary(), summary_path);

  int status = 0;
  for (std::size_t k = 0; k < cmp.runs.size(); ++k) {
    const RunResult& run = cmp.runs[k];
    std::cout << cmp.labels[k] << " eta=" << format_real(run.trace->config.eta)
              << " final_f=" << format_real(run.f_final);
    for (std::size_t g = 0; g < gap_thresholds.size(); ++g) {
      std::cout << " gap_" << format_real(gap_thresholds[g]) << "=" << gap_text(cmp.iterations_to_gap[k][g]);
    }
    if (run.aborted()) std::cout << " aborted=\"" << *run.trace->abort_reason << "\"";
    std::cout << "\n";
    if (!run.aborted() && !run.checks_passed()) status = static_cast<int>(RunStatus::invariant_failure);
  }
  return status;
}

int dataset_command(const std::string& loss, std::size_t rows, std::size_t features, double noise,
                    std::uint64_t seed, const std::string& out) {
  if (loss != "logistic" && loss != "least_squares") throw RangeError("loss must be logistic or least_squares");
  const LossKind kind = loss == "logistic" ? LossKind::logistic : LossKind::least_squares;
  save_dataset(synthetic_dataset(kind, static_cast<Index>(rows), static_cast<Index>(features), noise, seed), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-adaptive optimizer benchmark runner"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides run_flags, grid_flags, compare_flags;

  CLI::App* run = app.add_subcommand("run", "run one experiment and check its invariants");
  run->add_option("--config", config_path, "experiment config file");
  run_flags.attach(run);

  std::string candidates, criterion = "iterations_to_gap";
  double gap = 1e-6;
  CLI::App* grid = app.add_subcommand("grid", "search the base learning rate");
  grid->add_option("--config", config_path, "experiment config file");
  grid->add_option("--candidates", candidates, "comma-separated learning rates")->required();
  grid->add_option("--criterion", criterion, "final_f or iterations_to_gap");
  grid->add_option("--gap", gap, "optimality gap for iterations_to_gap");
  grid_flags.attach(grid);

  std::string optimizers, lrs, summary_path;
  CLI::App* compare = app.add_subcommand("compare", "run several optimizers on one problem");
  compare->add_option("--config", config_path, "shared experiment config file");
  compare->add_option("--optimizers", optimizers, "comma-separated optimizer ids")->required();
  compare->add_option("--lrs", lrs, "comma-separated learning rates, one per optimizer");
  compare->add_option("--summary", summary_path, "summary CSV path");
  compare_flags.attach(compare);

  std::string loss = "logistic", data_out;
  std::size_t rows = 200, features = 20;
  double noise = 0.1;
  std::uint64_t data_seed = 1;
  CLI::App* dataset = app.add_subcommand("dataset", "write a synthetic dataset as CSV");
  dataset->add_option("--loss", loss, "logistic or least_squares");
  dataset->add_option("--rows", rows);
  dataset->add_option("--features", features);
  dataset->add_option("--noise", noise);
  dataset->add_option("--seed", data_seed);
  dataset->add_option("--out", data_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run) return run_command(config_path, run_flags);
    if (*grid) return grid_command(config_path, grid_flags, candidates, criterion, gap);
    if (*compare) return compare_command(config_path, compare_flags, optimizers, lrs, summary_path);
    if (*dataset) return dataset_command(loss, rows, features, noise, data_seed, data_out);
  } catch (const aegdm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
