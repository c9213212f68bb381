#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aegdm/linalg.hpp"
#include "aegdm/optimizer.hpp"
#include "aegdm/problems.hpp"

namespace aegdm {

enum class TraceGranularity {
  full,         ///< every step keeps its vectors
  scalar_only,  ///< scalars every step, vectors every `vector_stride` steps
};

/// Snapshot of the run configuration that produced a trace.
struct TraceConfig {
  std::string problem_id;
  OptimizerKind optimizer = OptimizerKind::aegdm;
  double eta = 0.0;  ///< base learning rate at t = 0
  double mu = 0.0;   ///< momentum actually applied
  double c = 1.0;
  MomentumVariant momentum = MomentumVariant::running_sum;
  std::uint64_t seed = 0;
  Index dimension = 0;
  std::optional<Box> projection;
  bool constant_schedule = true;
  bool stochastic = false;
};

/// Record of step t: the state before the step plus what the step did.
/// Vectors are empty when the step was not retained.
struct TraceStep {
  std::size_t t = 0;
  double eta = 0.0;    ///< learning rate used by this step
  double value = 0.0;  ///< f_t(theta_t)
  double grad_norm = 0.0;
  double min_r = 0.0;  ///< min_i r_{t,i}; NaN for baselines
  double step_norm = 0.0;

  Vector theta;  ///< theta_t
  Vector g;      ///< gradient of f_t at theta_t
  Vector r;      ///< r_t
  Vector m;      ///< m_t
  Vector v;      ///< v_t
  Vector step;   ///< theta_{t+1} - theta_t

  bool has_vectors() const { return theta.size() > 0; }
};

struct TrajectoryTrace {
  TraceConfig config;
  std::vector<TraceStep> steps;

  // State after the final step.
  Vector theta_final;
  Vector r_final;
  Vector m_final;
  /// Full objective f(theta_T), when the harness evaluated it.
  std::optional<double> value_final;

  /// Minibatch whose value seeded r_0, when the first evaluation was sampled.
  std::optional<std::vector<std::size_t>> r0_sample_ids;
  std::optional<std::string> abort_reason;
  /// Cumulative regret R(1..T), filled for online runs.
  std::vector<double> regret;

  /// Number of completed steps T.
  std::size_t length() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  bool uses_energy() const {
    return config.optimizer == OptimizerKind::aegd || config.optimizer == OptimizerKind::aegdm;
  }
  /// True when every step retained its vectors.
  bool full() const;
  /// r_t for 0 <= t <= T.
  const Vector& energy_at(std::size_t t) const;
  const Vector& theta_at(std::size_t t) const;

  /// Throws Error unless steps are contiguous from 0 and r stays finite and nonnegative.
  void validate() const;
};

/// Number of sign changes in coordinate `coord` of consecutive nonzero steps.
std::size_t direction_reversals(const TrajectoryTrace& trace, Index coord);

/// First t with f_t(theta_t) - f_star <= gap, if any.
std::optional<std::size_t> iterations_to_gap(const TrajectoryTrace& trace, double f_star, double gap);

}  // namespace aegdm
