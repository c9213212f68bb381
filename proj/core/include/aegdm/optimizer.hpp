#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

#include "aegdm/evaluation.hpp"
#include "aegdm/linalg.hpp"

namespace aegdm {

enum class MomentumVariant {
  running_sum,  ///< m' = mu*m + v
  ema,          ///< m' = mu*m + (1-mu)*v
};

enum class OptimizerKind { sgd, sgdm, adam, aegd, aegdm };

std::string_view to_string(OptimizerKind kind);
std::string_view to_string(MomentumVariant variant);

struct HyperParams {
  double eta = 0.01;
  double mu = 0.9;
  double c = 1.0;
  MomentumVariant momentum = MomentumVariant::running_sum;

  // Adam only.
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// Reproduce the un-corrected, eps-free Adam row of the generic-form table.
  bool adam_table_form = false;

  /// Throws RangeError unless eta > 0 and 0 <= mu < 1 (and Adam betas in (0,1)).
  void validate() const;
};

/// Default base learning rate for each optimizer.
double default_learning_rate(OptimizerKind kind);

/// State of AEGD / AEGDM. `r` is the per-coordinate energy.
struct OptimizerState {
  Vector theta;
  Vector m;
  Vector r;
  std::size_t t = 0;
};

/// State of the SGD / SGDM / Adam baselines. `s` is only used by Adam.
struct BaselineState {
  Vector theta;
  Vector m;
  Vector s;
  std::size_t t = 0;
};

template <typename State>
struct StepResult {
  State new_state;
  Vector v;     ///< transformed gradient used this step
  Vector step;  ///< theta_{t+1} - theta_t
};

using StepOutput = StepResult<OptimizerState>;
using BaselineStepOutput = StepResult<BaselineState>;

/// The pair (m_{t+1}, diag A_t^{-1}) of the update theta - eta * A^{-1} m.
struct GenericForm {
  Vector m_next;
  Vector a_inv;
};

// Energy-adaptive building blocks -------------------------------------------

/// v = grad / (2 sqrt(f + c)). Throws NonPositiveShiftedValue if f + c <= 0.
Vector transformed_gradient(const Vector& grad, double f_value, double c);

Vector momentum_accumulate(const Vector& m, const Vector& v, double mu, MomentumVariant variant);

/// r' = r / (1 + 2 eta v^2), element-wise.
Vector energy_update(const Vector& r, const Vector& v, double eta);

/// theta' = theta - 2 eta r_next m_next, element-wise.
Vector position_update(const Vector& theta, const Vector& r_next, const Vector& m_next, double eta);

/// theta' = theta - eta * a_inv .* m_next.
Vector generic_step(const Vector& m_next, const Vector& a_inv_diag, const Vector& theta, double eta);

/// State at t = 0: m = 0, r = sqrt(f_0(theta_0) + c) * 1, built from the
/// first evaluation of the run.
OptimizerState initial_energy_state(const Vector& theta0, const Evaluation& first, double c);

BaselineState initial_baseline_state(const Vector& theta0);

StepOutput aegdm_step(const OptimizerState& state, const Evaluation& eval, const HyperParams& hp);

/// AEGDM with mu = 0.
StepOutput aegd_step(const OptimizerState& state, const Evaluation& eval, const HyperParams& hp);

BaselineStepOutput sgd_step(const BaselineState& state, const Evaluation& eval, const HyperParams& hp);
BaselineStepOutput sgdm_step(const BaselineState& state, const Evaluation& eval, const HyperParams& hp);
BaselineStepOutput adam_step(const BaselineState& state, const Evaluation& eval, const HyperParams& hp);

/// Generic-form pair of an energy step: (m_{t+1}, 2 r_{t+1}).
GenericForm generic_form(const StepOutput& out);

/// Generic-form pair of a baseline step taken from `before` with gradient `grad`.
GenericForm generic_form(OptimizerKind kind, const BaselineState& before, const Vector& grad,
                         const HyperParams& hp);

/// Runtime-dispatched optimizer used by the harness. Holds exactly one
/// state kind and steps it in place.
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, HyperParams hp);

  OptimizerKind kind() const { return kind_; }
  const HyperParams& params() const { return hp_; }
  bool uses_energy() const { return kind_ == OptimizerKind::aegd || kind_ == OptimizerKind::aegdm; }
  /// Momentum coefficient actually applied (0 for AEGD and SGD).
  double effective_mu() const;

  /// Must be called with the first evaluation before step().
  void initialize(const Vector& theta0, const Evaluation& first);
  bool initialized() const { return !std::holds_alternative<std::monostate>(state_); }

  struct Step {
    Vector v;
    Vector step;
  };
  /// Advance one step with base learning rate `eta` (schedules override hp.eta).
  Step step(const Evaluation& eval, double eta);

  const Vector& theta() const;
  void set_theta(const Vector& theta);
  /// Energy vector; empty for baselines.
  const Vector& energy() const;
  /// Momentum / first-moment buffer.
  const Vector& momentum() const;
  std::size_t iteration() const;

 private:
  OptimizerKind kind_;
  HyperParams hp_;
  std::variant<std::monostate, OptimizerState, BaselineState> state_;
};

}  // namespace aegdm
