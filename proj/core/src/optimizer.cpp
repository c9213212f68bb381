#include "aegdm/optimizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "aegdm/error.hpp"

namespace aegdm {

namespace {

std::string describe_shift(double f_value, double c) {
  std::ostringstream os;
  os.precision(17);
  os << "f + c must be positive, got f=" << f_value << " c=" << c;
  return os.str();
}

void bump_counter(std::size_t& t) {
  if (t == std::numeric_limits<std::size_t>::max()) {
    throw Error("step counter overflow");
  }
  ++t;
}

}  // namespace

NonPositiveShiftedValue::NonPositiveShiftedValue(double f_value, double c)
    : Error(describe_shift(f_value, c)), f_value_(f_value), c_(c) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::sgd: return "sgd";
    case OptimizerKind::sgdm: return "sgdm";
    case OptimizerKind::adam: return "adam";
    case OptimizerKind::aegd: return "aegd";
    case OptimizerKind::aegdm: return "aegdm";
  }
  return "unknown";
}

std::string_view to_string(MomentumVariant variant) {
  return variant == MomentumVariant::ema ? "ema" : "running_sum";
}

void HyperParams::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw RangeError("learning rate must be positive and finite");
  }
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw RangeError("momentum mu must lie in [0, 1)");
  }
  if (!std::isfinite(c)) {
    throw RangeError("energy shift c must be finite");
  }
  if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
    throw RangeError("Adam betas must lie in (0, 1)");
  }
  if (!(eps >= 0.0)) {
    throw RangeError("Adam eps must be nonnegative");
  }
}

double default_learning_rate(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::aegdm: return 0.01;
    case OptimizerKind::aegd: return 0.1;
    case OptimizerKind::adam: return 0.001;
    case OptimizerKind::sgd:
    case OptimizerKind::sgdm: return 0.01;
  }
  return 0.01;
}

Vector transformed_gradient(const Vector& grad, double f_value, double c) {
  const double shifted = f_value + c;
  if (!(shifted > 0.0)) {
    throw NonPositiveShiftedValue(f_value, c);
  }
  return grad / (2.0 * std::sqrt(shifted));
}

Vector momentum_accumulate(const Vector& m, const Vector& v, double mu, MomentumVariant variant) {
  if (variant == MomentumVariant::ema) {
    return mu * m + (1.0 - mu) * v;
  }
  return mu * m + v;
}

Vector energy_update(const Vector& r, const Vector& v, double eta) {
  // 1 + 2 eta v^2 >= 1, so no guard on the denominator.
  return (r.array() / (1.0 + (2.0 * eta) * v.array().square())).matrix();
}

Vector position_update(const Vector& theta, const Vector& r_next, const Vector& m_next, double eta) {
  return theta - (2.0 * eta) * r_next.cwiseProduct(m_next);
}

Vector generic_step(const Vector& m_next, const Vector& a_inv_diag, const Vector& theta, double eta) {
  return theta - eta * a_inv_diag.cwiseProduct(m_next);
}

OptimizerState initial_energy_state(const Vector& theta0, const Evaluation& first, double c) {
  const double shifted = first.value + c;
  if (!(shifted > 0.0)) {
    throw NonPositiveShiftedValue(first.value, c);
  }
  OptimizerState state;
  state.theta = theta0;
  state.m = Vector::Zero(theta0.size());
  state.r = Vector::Constant(theta0.size(), std::sqrt(shifted));
  state.t = 0;
  return state;
}

BaselineState initial_baseline_state(const Vector& theta0) {
  BaselineState state;
  state.theta = theta0;
  state.m = Vector::Zero(theta0.size());
  state.s = Vector::Zero(theta0.size());
  return state;
}

StepOutput aegdm_step(const OptimizerState& state, const Evaluation& eval, const HyperParams& hp) {
  StepOutput out;
  out.v = transformed_gradient(eval.gradient, eval.value, hp.c);
  out.new_state.m = momentum_accumulate(state.m, out.v, hp.mu, hp.momentum);
  out.new_state.r = energy_update(state.r, out.v, hp.eta);
  // The increment is kept as computed so that step == -2 eta r_{t+1} m_{t+1}
  // holds bitwise; theta + step equals position_update() exactly.
  out.step = -(2.0 * hp.eta) * out.new_state.r.cwiseProduct(out.new_state.m);
  out.new_state.theta = state.theta + out.step;
  out.new_state.t = state.t;
  bump_counter(out.new_state.t);
  return out;
}

StepOutput aegd_step(const OptimizerState& state, const Evaluation& eval, const HyperParams& hp) {
  HyperParams plain = hp;
  plain.mu = 0.0;
  plain.momentum = MomentumVariant::running_sum;
  return aegdm_step(state, eval, plain);
}

namespace {

BaselineStepOutput finish_baseline(const BaselineState& before, BaselineState after, const Vector& v,
                                   const GenericForm& form, double eta) {
  BaselineStepOutput out;
  out.step = -eta * form.a_inv.cwiseProduct(form.m_next);
  after.theta = before.theta + out.step;
  after.t = before.t;
  bump_counter(after.t);
  out.v = v;
  out.new_state = std::move(after);
  return out;
}

struct AdamMoments {
  Vector m;
  Vector s;
};

AdamMoments adam_moments(const BaselineState& state, const Vector& grad, const HyperParams& hp) {
  return {hp.beta1 * state.m + (1.0 - hp.beta1) * grad,
          hp.beta2 * state.s + (1.0 - hp.beta2) * grad.cwiseAbs2()};
}

GenericForm adam_form(const AdamMoments& mom, std::size_t t, const HyperParams& hp) {
  GenericForm form;
  const Index n = mom.m.size();
  form.a_inv.resize(n);
  if (hp.adam_table_form) {
    form.m_next = mom.m;
    for (Index i = 0; i < n; ++i) {
      // s_i == 0 only when every past gradient coordinate was 0, so m_i == 0 too.
      form.a_inv[i] = mom.s[i] > 0.0 ? 1.0 / std::sqrt(mom.s[i]) : 1.0;
    }
    return form;
  }
  const double step = static_cast<double>(t) + 1.0;
  const double c1 = 1.0 - std::pow(hp.beta1, step);
  const double c2 = 1.0 - std::pow(hp.beta2, step);
  form.m_next = mom.m / c1;
  for (Index i = 0; i < n; ++i) {
    form.a_inv[i] = 1.0 / (std::sqrt(mom.s[i] / c2) + hp.eps);
  }
  return form;
}

}  // namespace

BaselineStepOutput sgd_step(const BaselineState& state, const Evaluation& eval, const HyperParams& hp) {
  GenericForm form{eval.gradient, Vector::Ones(eval.gradient.size())};
  return finish_baseline(state, state, eval.gradient, form, hp.eta);
}

BaselineStepOutput sgdm_step(const BaselineState& state, const Evaluation& eval, const HyperParams& hp) {
  BaselineState after = state;
  after.m = momentum_accumulate(state.m, eval.gradient, hp.mu, MomentumVariant::running_sum);
  GenericForm form{after.m, Vector::Ones(eval.gradient.size())};
  return finish_baseline(state, std::move(after), eval.gradient, form, hp.eta);
}

BaselineStepOutput adam_step(const BaselineState& state, const Evaluation& eval, const HyperParams& hp) {
  AdamMoments mom = adam_moments(state, eval.gradient, hp);
  GenericForm form = adam_form(mom, state.t, hp);
  BaselineState after = state;
  after.m = std::move(mom.m);
  after.s = std::move(mom.s);
  return finish_baseline(state, std::move(after), eval.gradient, form, hp.eta);
}

GenericForm generic_form(const StepOutput& out) {
  return {out.new_state.m, 2.0 * out.new_state.r};
}

GenericForm generic_form(OptimizerKind kind, const BaselineState& before, const Vector& grad,
                         const HyperParams& hp) {
  switch (kind) {
    case OptimizerKind::sgd:
      return {grad, Vector::Ones(grad.size())};
    case OptimizerKind::sgdm:
      return {momentum_accumulate(before.m, grad, hp.mu, MomentumVariant::running_sum),
              Vector::Ones(grad.size())};
    case OptimizerKind::adam:
      return adam_form(adam_moments(before, grad, hp), before.t, hp);
    case OptimizerKind::aegd:
    case OptimizerKind::aegdm:
      break;
  }
  throw Error("generic_form(kind, ...) only covers the baseline optimizers");
}

// Optimizer ----------------------------------------------------------------

Optimizer::Optimizer(OptimizerKind kind, HyperParams hp) : kind_(kind), hp_(hp) {
  if (kind_ == OptimizerKind::aegd || kind_ == OptimizerKind::sgd) {
    hp_.mu = 0.0;
  }
  hp_.validate();
}

double Optimizer::effective_mu() const { return hp_.mu; }

void Optimizer::initialize(const Vector& theta0, const Evaluation& first) {
  if (uses_energy()) {
    state_ = initial_energy_state(theta0, first, hp_.c);
  } else {
    state_ = initial_baseline_state(theta0);
  }
}

Optimizer::Step Optimizer::step(const Evaluation& eval, double eta) {
  if (!initialized()) {
    throw Error("optimizer stepped before initialize()");
  }
  HyperParams hp = hp_;
  hp.eta = eta;
  Step result;
  auto take = [&result](auto out) {
    result.v = std::move(out.v);
    result.step = std::move(out.step);
    return std::move(out.new_state);
  };
  switch (kind_) {
    case OptimizerKind::aegdm:
      state_ = take(aegdm_step(std::get<OptimizerState>(state_), eval, hp));
      break;
    case OptimizerKind::aegd:
      state_ = take(aegd_step(std::get<OptimizerState>(state_), eval, hp));
      break;
    case OptimizerKind::sgd:
      state_ = take(sgd_step(std::get<BaselineState>(state_), eval, hp));
      break;
    case OptimizerKind::sgdm:
      state_ = take(sgdm_step(std::get<BaselineState>(state_), eval, hp));
      break;
    case OptimizerKind::adam:
      state_ = take(adam_step(std::get<BaselineState>(state_), eval, hp));
      break;
  }
  return result;
}

const Vector& Optimizer::theta() const {
  if (const auto* s = std::get_if<OptimizerState>(&state_)) return s->theta;
  return std::get<BaselineState>(state_).theta;
}

void Optimizer::set_theta(const Vector& theta) {
  if (auto* s = std::get_if<OptimizerState>(&state_)) {
    s->theta = theta;
  } else {
    std::get<BaselineState>(state_).theta = theta;
  }
}

const Vector& Optimizer::energy() const {
  static const Vector empty;
  if (const auto* s = std::get_if<OptimizerState>(&state_)) return s->r;
  return empty;
}

const Vector& Optimizer::momentum() const {
  if (const auto* s = std::get_if<OptimizerState>(&state_)) return s->m;
  return std::get<BaselineState>(state_).m;
}

std::size_t Optimizer::iteration() const {
  if (const auto* s = std::get_if<OptimizerState>(&state_)) return s->t;
  return std::get<BaselineState>(state_).t;
}

}  // namespace aegdm
