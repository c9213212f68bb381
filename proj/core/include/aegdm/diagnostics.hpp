#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aegdm/finite_difference.hpp"
#include "aegdm/online.hpp"
#include "aegdm/problems.hpp"
#include "aegdm/trace.hpp"

namespace aegdm {

/// Evaluated sides of one inequality or identity.
///
/// `satisfied` is true iff lhs <= rhs up to the check's stated tolerance;
/// `margin` is rhs - lhs. `constants` names every measured quantity the
/// right-hand side was assembled from.
struct BoundReport {
  std::string bound_id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double margin = 0.0;
  std::map<std::string, double> constants;
};

namespace tolerance {
inline constexpr double recurrence_ulps = 4.0;
inline constexpr double identity_relative = 1e-10;
inline constexpr double inequality_relative = 1e-9;
inline constexpr double reformulation_relative = 1e-12;
inline constexpr double ode_decay_ratio = 0.75;
}  // namespace tolerance

/// lhs <= rhs * (1 + 1e-9), the slack only absorbing float accumulation.
bool within_inequality(double lhs, double rhs);

/// r_{t+1} <= r_t for all t, i and r_{t+1}(1 + 2 eta v^2) = r_t to 4 ulps.
/// lhs is the largest increase max(r_{t+1} - r_t), rhs is 0.
BoundReport check_energy_monotone(const TrajectoryTrace& trace);

/// Streaming form of check_energy_monotone, fed one step at a time so
/// scalar-only runs still get the check.
class EnergyMonotoneAccumulator {
 public:
  void add(const Vector& r, const Vector& r_next, const Vector& v, double eta);
  BoundReport report() const;

 private:
  double max_increase_ = -std::numeric_limits<double>::infinity();
  double max_ulps_ = 0.0;
  std::size_t recurrence_violations_ = 0;
  std::size_t increases_ = 0;
  std::size_t stalls_ = 0;
  std::size_t underflows_ = 0;
  std::size_t steps_ = 0;
};

/// sum_t r_{t+1,i} v_{t,i}^2 == (r_{0,i} - r_{T,i}) / (2 eta) per coordinate.
/// lhs is the worst relative discrepancy, rhs the 1e-10 tolerance.
BoundReport check_energy_telescoping(const TrajectoryTrace& trace);

/// theta_{t+1} - theta_t == -2 eta r_{t+1} v_t + mu (r_{t+1}/r_t)(theta_t - theta_{t-1}), t >= 1.
BoundReport check_momentum_reformulation(const TrajectoryTrace& trace);

/// sum_t |theta_{t+1} - theta_t|^2 <= 2 eta n (f_0(theta_0) + c) / (1 - mu)^2.
BoundReport check_step_sum_bound(const TrajectoryTrace& trace);

/// sum_{t=1..T} sum_i r_{t,i} m_{t,i}^2 <= n r_0 / (2 eta (1 - mu)^2), together with the
/// mu = 0 bound G_i(T, 0) <= r_{0,i} / (2 eta) for every coordinate.
BoundReport check_G_bound(const TrajectoryTrace& trace);

/// Per coordinate, (1/T) sum_t |v_{t,i}| <= (sqrt(f_0 + c)/2)^{1/2} / sqrt(eta T r_{T,i}).
/// Reports the coordinate closest to violation.
BoundReport check_v_average_bound(const TrajectoryTrace& trace);

/// Cumulative regret R(1..T) against the sequence comparator.
std::vector<double> compute_regret(const TrajectoryTrace& trace, const OnlineSequence& sequence);

/// R(T) <= C1 (sum_i 1/(eta r_{T,i}))^{1/2} sqrt(T) + C2 with constants
/// assembled from the trace. Requires a projected run.
BoundReport check_regret_bound(const TrajectoryTrace& trace, const OnlineSequence& sequence);

struct ConvergenceOptions {
  std::size_t gradient_stride = 10;  ///< full gradient recomputed every k steps
  std::size_t variance_checkpoints = 20;
  std::size_t min_seeds = 5;
};

/// Ensemble check of the nonconvex convergence rate:
/// mean_seeds[min_i r_{T,i} sum_t |grad f(theta_t)|^2 / T] <= (C1 + C2 n + C3 sigma_g sqrt(nT)) / (eta T).
/// Throws InsufficientSeeds when fewer than `min_seeds` traces are given.
BoundReport check_convergence_bound(std::span<const TrajectoryTrace> traces, const Problem& problem,
                                    const ConvergenceOptions& options = {});

/// Smoothness constant of F = sqrt(f + c).
double compute_LF(double L, double G_inf, double f_star_plus_c);

struct EnergyFloorInputs {
  double L = 0.0;       ///< smoothness of f
  double f_star = 0.0;  ///< f(theta*)
  std::optional<double> G_inf;  ///< measured from the trace when absent
  // Stochastic branch only.
  double sigma = 0.0;  ///< max(sigma_f, sigma_g)
  std::optional<double> a;  ///< inf f_t + c; measured when absent
};

/// Energy floor sqrt(f* + c) - eta D1 - mu D2 (- sigma D3). When the
/// sufficient condition eta D1 + mu D2 < sqrt(f* + c) holds on a deterministic
/// trace, asserts min_i r_{T,i} > floor; otherwise only records the values.
BoundReport check_energy_lower_bound(const TrajectoryTrace& trace, const EnergyFloorInputs& inputs);

/// max over t with eta t <= horizon of max_i |r_{t,i} - (1 - mu) F(theta_t) - mu F(theta_0)|.
double ode_drift(const TrajectoryTrace& trace, const ScalarFunction& F, double horizon);

/// drift(fine) <= 0.75 drift(coarse) over the common physical horizon, where
/// `fine` uses half the learning rate of `coarse`.
BoundReport check_ode_conservation(const TrajectoryTrace& coarse, const TrajectoryTrace& fine,
                                   const ScalarFunction& F);

/// Least-squares slope of log y against log x.
double fit_growth_exponent(std::span<const double> x, std::span<const double> y);

/// Checks attached to every run: energy monotonicity for AEGD(M) traces and,
/// for constant schedules, the step-sum, G and v-average bounds.
std::vector<BoundReport> standard_checks(const TrajectoryTrace& trace);

}  // namespace aegdm
