#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "aegdm/optimizer.hpp"
#include "aegdm/problems.hpp"
#include "aegdm/trace.hpp"

namespace aegdm {

enum class ScheduleKind { constant, step_decay };

/// Learning-rate schedule applied to the single base rate eta.
struct LrSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double factor = 10.0;     ///< step_decay divisor
  std::size_t at_step = 0;  ///< first step using eta / factor

  double rate(double eta, std::size_t t) const;
  std::string to_string() const;
  /// "constant" or "step_decay(factor,at_step)".
  static LrSchedule parse(std::string_view text);
};

struct ProblemConfig {
  std::string id = "rosenbrock";
  std::optional<Vector> start;
  double start_jitter = 0.0;  ///< N(0, jitter^2) seeded perturbation of the start
  Index dimension = 0;        ///< 0 keeps the problem default
  double condition = 10.0;    ///< quadratic
  Index rows = 200;           ///< finite-sum problems
  double noise = 0.1;
  double weight_decay = 0.0;
  std::uint64_t data_seed = 1;
  std::optional<std::string> data_path;  ///< dataset CSV instead of a synthetic one
};

bool same_problem(const ProblemConfig& a, const ProblemConfig& b);

struct ExperimentConfig {
  ProblemConfig problem;
  OptimizerKind optimizer = OptimizerKind::aegdm;
  HyperParams hp;
  std::size_t iters = 1000;
  std::size_t batch_size = 16;  ///< finite sums only; 0 means full batch
  std::uint64_t seed = 0;
  LrSchedule schedule;
  std::optional<Box> projection;
  TraceGranularity granularity = TraceGranularity::full;
  std::size_t vector_stride = 10;
  std::optional<std::string> trace_path;
  std::optional<std::string> report_path;

  /// Throws RangeError on out-of-range values.
  void validate() const;
};

/// Accumulates sectioned key=value entries; later entries override earlier
/// ones, which is how command-line flags override file values.
class ConfigBuilder {
 public:
  /// Parses `[section]` headers, `key = value` lines and '#' comments.
  void load(std::string_view text);
  /// Throws UnknownKey for keys outside the schema.
  void set(const std::string& section, const std::string& key, const std::string& value, std::size_t line = 0);
  /// Fills defaults and validates.
  ExperimentConfig build() const;

 private:
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::size_t>> values_;
};

ExperimentConfig parse_config(std::string_view text);
/// Canonical text form; parse_config(format_config(c)) reproduces c.
std::string format_config(const ExperimentConfig& config);

OptimizerKind parse_optimizer_kind(std::string_view text);

}  // namespace aegdm
