#include "aegdm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aegdm/error.hpp"

namespace aegdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_energy_trace(const TrajectoryTrace& trace, const char* check) {
  if (!trace.uses_energy()) {
    throw Error(std::string(check) + " applies to AEGD/AEGDM traces only");
  }
  if (!trace.full()) {
    throw Error(std::string(check) + " needs a trace with full vectors");
  }
}

double ulp(double x) {
  x = std::abs(x);
  return std::nextafter(x, kInf) - x;
}

BoundReport make_report(std::string id, double lhs, double rhs, bool satisfied) {
  BoundReport report;
  report.bound_id = std::move(id);
  report.lhs = lhs;
  report.rhs = rhs;
  report.satisfied = satisfied;
  report.margin = rhs - lhs;
  return report;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double one_minus_mu_sq(const TrajectoryTrace& trace) {
  const double d = 1.0 - trace.config.mu;
  return d * d;
}

double base_eta(const TrajectoryTrace& trace) {
  return trace.empty() ? trace.config.eta : trace.steps.front().eta;
}

/// f_0(theta_0) + c as seen by the run, i.e. r_0^2 up to rounding.
double initial_shifted_value(const TrajectoryTrace& trace) { return trace.steps.front().value + trace.config.c; }

double max_gradient_norm(const TrajectoryTrace& trace) {
  double g = 0.0;
  for (const TraceStep& s : trace.steps) g = std::max(g, s.grad_norm);
  return g;
}

}  // namespace

bool within_inequality(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return false;
  if (rhs == kInf) return true;
  return lhs <= rhs + std::abs(rhs) * tolerance::inequality_relative;
}

void EnergyMonotoneAccumulator::add(const Vector& r, const Vector& r_next, const Vector& v, double eta) {
  ++steps_;
  for (Index i = 0; i < r.size(); ++i) {
    const double increase = r_next[i] - r[i];
    max_increase_ = std::max(max_increase_, increase);
    if (increase > 0.0) ++increases_;
    if (increase == 0.0 && v[i] != 0.0) ++stalls_;

    const double denom = 1.0 + (2.0 * eta) * (v[i] * v[i]);
    const double error = std::abs(r_next[i] * denom - r[i]);
    const double unit = ulp(r[i]);
    double allowed = tolerance::recurrence_ulps * unit;
    if (std::abs(r_next[i]) < std::numeric_limits<double>::min()) {
      // r_{t+1} underflowed: it is only known to a multiple of denorm_min,
      // which the product scales by denom.
      allowed += denom * std::numeric_limits<double>::denorm_min();
      ++underflows_;
    } else if (unit > 0.0) {
      max_ulps_ = std::max(max_ulps_, error / unit);
    }
    if (!(error <= allowed)) ++recurrence_violations_;
  }
}

BoundReport EnergyMonotoneAccumulator::report() const {
  const double lhs = steps_ == 0 ? 0.0 : max_increase_;
  const bool ok = lhs <= 0.0 && recurrence_violations_ == 0;
  BoundReport report = make_report("energy_monotone", lhs, 0.0, ok);
  report.constants = {{"increases", static_cast<double>(increases_)},
                      {"recurrence_violations", static_cast<double>(recurrence_violations_)},
                      {"max_recurrence_ulps", max_ulps_},
                      {"stalls", static_cast<double>(stalls_)},
                      {"underflows", static_cast<double>(underflows_)},
                      {"steps", static_cast<double>(steps_)}};
  return report;
}

BoundReport check_energy_monotone(const TrajectoryTrace& trace) {
  require_energy_trace(trace, "check_energy_monotone");
  EnergyMonotoneAccumulator acc;
  for (std::size_t t = 0; t < trace.length(); ++t) {
    acc.add(trace.energy_at(t), trace.energy_at(t + 1), trace.steps[t].v, trace.steps[t].eta);
  }
  return acc.report();
}

BoundReport check_energy_telescoping(const TrajectoryTrace& trace) {
  require_energy_trace(trace, "check_energy_telescoping");
  const Vector& r0 = trace.energy_at(0);
  const Vector& rT = trace.energy_at(trace.length());
  double worst = 0.0;
  for (Index i = 0; i < r0.size(); ++i) {
    // sum_t 2 eta_t r_{t+1,i} v_{t,i}^2 telescopes to r_{0,i} - r_{T,i}.
    double weighted = 0.0;
    for (std::size_t t = 0; t < trace.length(); ++t) {
      const double v = trace.steps[t].v[i];
      weighted += 2.0 * trace.steps[t].eta * trace.energy_at(t + 1)[i] * v * v;
    }
    worst = std::max(worst, relative_gap(weighted, r0[i] - rT[i]));
  }
  BoundReport report = make_report("energy_telescoping", worst, tolerance::identity_relative,
                                   worst <= tolerance::identity_relative);
  report.constants = {{"n", static_cast<double>(r0.size())}, {"steps", static_cast<double>(trace.length())}};
  return report;
}

BoundReport check_momentum_reformulation(const TrajectoryTrace& trace) {
  require_energy_trace(trace, "check_momentum_reformulation");
  if (trace.config.projection) {
    throw Error("momentum reformulation does not hold for projected runs");
  }
  const double mu = trace.config.mu;
  const bool ema = trace.config.momentum == MomentumVariant::ema;
  double worst = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  for (std::size_t t = 1; t < trace.length(); ++t) {
    const TraceStep& prev = trace.steps[t - 1];
    const TraceStep& cur = trace.steps[t];
    const Vector& r = cur.r;
    const Vector& r_next = trace.energy_at(t + 1);
    for (Index i = 0; i < r.size(); ++i) {
      if (!(r[i] >= std::numeric_limits<double>::min())) {
        ++skipped;
        continue;
      }
      const double fresh = -2.0 * cur.eta * r_next[i] * (ema ? (1.0 - mu) * cur.v[i] : cur.v[i]);
      const double carried = mu * (cur.eta * r_next[i]) / (prev.eta * r[i]) * prev.step[i];
      const double scale = std::abs(fresh) + std::abs(carried);
      const double error = std::abs(cur.step[i] - (fresh + carried));
      const double rel = scale == 0.0 ? (error == 0.0 ? 0.0 : kInf) : error / scale;
      worst = std::max(worst, rel);
      ++checked;
    }
  }
  BoundReport report = make_report("momentum_reformulation", worst, tolerance::reformulation_relative,
                                   worst <= tolerance::reformulation_relative);
  report.constants = {{"checked", static_cast<double>(checked)},
                      {"skipped_subnormal", static_cast<double>(skipped)},
                      {"mu", mu}};
  return report;
}

BoundReport check_step_sum_bound(const TrajectoryTrace& trace) {
  require_energy_trace(trace, "check_step_sum_bound");
  double lhs = 0.0;
  for (const TraceStep& s : trace.steps) lhs += s.step.squaredNorm();
  const double n = static_cast<double>(trace.config.dimension);
  const double eta = base_eta(trace);
  const double shifted = trace.empty() ? 0.0 : initial_shifted_value(trace);
  const double rhs = 2.0 * eta * n * shifted / one_minus_mu_sq(trace);
  BoundReport report = make_report("step_sum", lhs, rhs, within_inequality(lhs, rhs));
  report.constants = {{"eta", eta}, {"mu", trace.config.mu}, {"n", n}, {"f0_plus_c", shifted}};
  return report;
}

BoundReport check_G_bound(const TrajectoryTrace& trace) {
  require_energy_trace(trace, "check_G_bound");
  const Vector& r0 = trace.energy_at(0);
  const double eta = base_eta(trace);
  const Index n = r0.size();
  double g_mu = 0.0;
  double g0_total = 0.0;
  double worst_g0_ratio = 0.0;
  bool g0_ok = true;
  for (Index i = 0; i < n; ++i) {
    double g0_i = 0.0;
    for (std::size_t t = 0; t < trace.length(); ++t) {
      const Vector& r_next = trace.energy_at(t + 1);
      const Vector& m_next = t + 1 < trace.length() ? trace.steps[t + 1].m : trace.m_final;
      const double v = trace.steps[t].v[i];
      g_mu += r_next[i] * m_next[i] * m_next[i];
      g0_i += r_next[i] * v * v;
    }
    const double bound_i = r0[i] / (2.0 * eta);
    g0_total += g0_i;
    g0_ok = g0_ok && within_inequality(g0_i, bound_i);
    if (bound_i > 0.0) worst_g0_ratio = std::max(worst_g0_ratio, g0_i / bound_i);
  }
  const double rhs = r0.sum() / (2.0 * eta * one_minus_mu_sq(trace));
  BoundReport report = make_report("G_bound", g_mu, rhs, within_inequality(g_mu, rhs) && g0_ok);
  report.constants = {{"eta", eta},
                      {"mu", trace.config.mu},
                      {"n", static_cast<double>(n)},
                      {"G0", g0_total},
                      {"G0_bound", r0.sum() / (2.0 * eta)},
                      {"G0_worst_ratio", worst_g0_ratio}};
  return report;
}

BoundReport check_v_average_bound(const TrajectoryTrace& trace) {
  require_energy_trace(trace, "check_v_average_bound");
  if (trace.empty()) {
    BoundReport report = make_report("v_average", 0.0, kInf, true);
    return report;
  }
  const double eta = base_eta(trace);
  const double T = static_cast<double>(trace.length());
  const double prefactor = std::sqrt(std::sqrt(initial_shifted_value(trace)) / 2.0);
  const Vector& rT = trace.energy_at(trace.length());
  double worst_ratio = -1.0;
  double worst_lhs = 0.0;
  double worst_rhs = kInf;
  Index worst_i = 0;
  bool ok = true;
  for (Index i = 0; i < rT.size(); ++i) {
    double sum = 0.0;
    for (const TraceStep& s : trace.steps) sum += std::abs(s.v[i]);
    const double lhs = sum / T;
    const double rhs = rT[i] > 0.0 ? prefactor / std::sqrt(eta * T * rT[i]) : kInf;
    ok = ok && within_inequality(lhs, rhs);
    const double ratio = rhs == kInf ? 0.0 : lhs / rhs;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_lhs = lhs;
      worst_rhs = rhs;
      worst_i = i;
    }
  }
  BoundReport report = make_report("v_average", worst_lhs, worst_rhs, ok);
  report.constants = {{"eta", eta}, {"T", T}, {"coordinate", static_cast<double>(worst_i)}, {"prefactor", prefactor}};
  return report;
}

std::vector<double> compute_regret(const TrajectoryTrace& trace, const OnlineSequence& sequence) {
  if (!sequence.comparator()) {
    throw ComparatorMissing("online sequence has no comparator theta*");
  }
  if (trace.length() > sequence.horizon()) {
    throw Error("trace is longer than the online sequence");
  }
  const Vector& best = *sequence.comparator();
  std::vector<double> regret;
  regret.reserve(trace.length());
  double total = 0.0;
  for (std::size_t t = 0; t < trace.length(); ++t) {
    total += trace.steps[t].value - sequence.cost(t, best);
    regret.push_back(total);
  }
  return regret;
}

BoundReport check_regret_bound(const TrajectoryTrace& trace, const OnlineSequence& sequence) {
  require_energy_trace(trace, "check_regret_bound");
  if (!trace.config.projection) {
    throw UnboundedDomain("regret bound needs a projected run with a bounded feasible set");
  }
  if (trace.length() != sequence.horizon()) {
    throw Error("regret bound needs the trace to cover the whole sequence horizon");
  }
  const std::vector<double> regret = compute_regret(trace, sequence);
  const double lhs = regret.empty() ? 0.0 : regret.back();

  const double eta = base_eta(trace);
  const double mu = trace.config.mu;
  const double c = trace.config.c;
  const double n = static_cast<double>(trace.config.dimension);
  const double T = static_cast<double>(trace.length());
  const double F0 = std::sqrt(initial_shifted_value(trace));
  double B = 0.0;
  for (const TraceStep& s : trace.steps) B = std::max(B, s.value + c);
  const double d_inf = sequence.d_inf();
  const double sqrt_b = std::sqrt(B);

  // G(T, mu) <= n F0 / (2 eta (1 - mu)^2); the eta in that bound is carried
  // by the sum over 1/(eta r_T).
  const double g_scaled = n * F0 / (2.0 * one_minus_mu_sq(trace));
  const double C1 = 2.0 * (1.0 + mu) * sqrt_b * d_inf * std::sqrt(g_scaled);
  const double C2 = 2.0 * sqrt_b * g_scaled;
  const Vector& rT = trace.energy_at(trace.length());
  double inv_sum = 0.0;
  for (Index i = 0; i < rT.size(); ++i) inv_sum += rT[i] > 0.0 ? 1.0 / (eta * rT[i]) : kInf;
  const double rhs = C1 * std::sqrt(inv_sum) * std::sqrt(T) + C2;

  BoundReport report = make_report("regret", lhs, rhs, within_inequality(lhs, rhs));
  report.constants = {{"C1", C1},   {"C2", C2},     {"B", B},     {"D_inf", d_inf}, {"F0", F0},
                      {"eta", eta}, {"mu", mu},     {"n", n},     {"T", T},         {"R_over_T", lhs / T}};
  return report;
}

BoundReport check_convergence_bound(std::span<const TrajectoryTrace> traces, const Problem& problem,
                                    const ConvergenceOptions& options) {
  if (traces.size() < options.min_seeds) {
    throw InsufficientSeeds("convergence check needs at least " + std::to_string(options.min_seeds) +
                            " traces, got " + std::to_string(traces.size()));
  }
  const auto L_opt = problem.smoothness();
  if (!L_opt) throw Error("convergence check needs a problem with known smoothness L");
  const double L = *L_opt;

  const TrajectoryTrace& first = traces.front();
  const double eta = base_eta(first);
  const double mu = first.config.mu;
  const double c = first.config.c;
  const std::size_t T = first.length();
  const double n = static_cast<double>(problem.dimension());
  for (const TrajectoryTrace& tr : traces) {
    require_energy_trace(tr, "check_convergence_bound");
    if (tr.length() != T || base_eta(tr) != eta || tr.config.mu != mu || tr.config.c != c) {
      throw Error("convergence ensemble must share eta, mu, c and T");
    }
    if (T == 0) throw Error("convergence check needs T >= 1");
  }
  const bool stochastic = problem.stochastic();
  const std::size_t stride = std::max<std::size_t>(1, options.gradient_stride);

  double lhs_sum = 0.0;
  double G_inf = 0.0;
  double a = kInf;
  double B = 0.0;
  double F0 = 0.0;
  double f0_mean = 0.0;
  double f_low = problem.optimal_value().value_or(kInf);
  double variance_sum = 0.0;
  std::size_t variance_count = 0;

  for (const TrajectoryTrace& tr : traces) {
    for (const TraceStep& s : tr.steps) {
      G_inf = std::max(G_inf, s.grad_norm);
      a = std::min(a, s.value + c);
      B = std::max(B, s.value + c);
    }
    const double f0_full = problem.value(tr.theta_at(0));
    F0 = std::max(F0, std::sqrt(f0_full + c));
    f0_mean += f0_full;

    double grad_sq_sum = 0.0;
    if (!stochastic) {
      for (const TraceStep& s : tr.steps) grad_sq_sum += s.grad_norm * s.grad_norm;
      for (const TraceStep& s : tr.steps) f_low = std::min(f_low, s.value);
    } else {
      // Full gradients at every stride-th step, linearly interpolated between.
      std::vector<std::size_t> at;
      std::vector<double> sq;
      for (std::size_t t = 0; t < T; t += stride) {
        const Evaluation full = problem.evaluate(tr.theta_at(t));
        at.push_back(t);
        sq.push_back(full.gradient.squaredNorm());
        f_low = std::min(f_low, full.value);
      }
      for (std::size_t t = 0; t < T; ++t) {
        const std::size_t k = t / stride;
        if (k + 1 < at.size()) {
          const double w = static_cast<double>(t - at[k]) / static_cast<double>(at[k + 1] - at[k]);
          grad_sq_sum += (1.0 - w) * sq[k] + w * sq[k + 1];
        } else {
          grad_sq_sum += sq[k];
        }
      }
      const std::size_t checkpoints = std::max<std::size_t>(1, options.variance_checkpoints);
      for (std::size_t j = 0; j < checkpoints; ++j) {
        const std::size_t t = (j * T) / checkpoints;
        const TraceStep& s = tr.steps[t];
        variance_sum += (s.g - problem.evaluate(s.theta).gradient).squaredNorm();
        ++variance_count;
      }
    }
    f_low = std::min(f_low, problem.value(tr.theta_at(T)));
    lhs_sum += tr.energy_at(T).minCoeff() * grad_sq_sum / static_cast<double>(T);
  }
  const double count = static_cast<double>(traces.size());
  const double lhs = lhs_sum / count;
  f0_mean /= count;
  const double sigma_g = variance_count > 0 ? std::sqrt(variance_sum / static_cast<double>(variance_count)) : 0.0;

  const double sqrt_b = std::sqrt(B);
  const double sqrt_a = std::sqrt(a);
  const double omm = (1.0 - mu) * (1.0 - mu);
  const double C1 = (f0_mean - f_low) * sqrt_b;
  const double C2 = (eta * G_inf * G_inf / sqrt_a + 4.0 * B / sqrt_a + 2.0 * mu * B + mu / (2.0 * omm)) * sqrt_b * F0 +
                    eta * L * sqrt_b * F0 * F0 / omm;
  const double C3 = (2.0 * std::sqrt(B / a) + mu / (1.0 - mu)) * std::sqrt(2.0 * eta * B) * F0;
  const double Td = static_cast<double>(T);
  const double rhs = (C1 + C2 * n + C3 * sigma_g * std::sqrt(n * Td)) / (eta * Td);

  BoundReport report = make_report("convergence", lhs, rhs, within_inequality(lhs, rhs));
  report.constants = {{"C1", C1},   {"C2", C2},   {"C3", C3}, {"sigma_g", sigma_g}, {"G_inf", G_inf},
                      {"a", a},     {"B", B},     {"L", L},   {"F0", F0},           {"f_low", f_low},
                      {"eta", eta}, {"mu", mu},   {"n", n},   {"T", Td},            {"seeds", count}};
  return report;
}

double compute_LF(double L, double G_inf, double f_star_plus_c) {
  if (!(f_star_plus_c > 0.0)) throw RangeError("f* + c must be positive");
  return (L + G_inf * G_inf / (2.0 * f_star_plus_c)) / (2.0 * std::sqrt(f_star_plus_c));
}

BoundReport check_energy_lower_bound(const TrajectoryTrace& trace, const EnergyFloorInputs& inputs) {
  require_energy_trace(trace, "check_energy_lower_bound");
  if (trace.empty()) throw Error("energy floor needs a nonempty trace");
  const double c = trace.config.c;
  const double mu = trace.config.mu;
  const double eta = base_eta(trace);
  const double n = static_cast<double>(trace.config.dimension);
  const double T = static_cast<double>(trace.length());
  const double shifted0 = initial_shifted_value(trace);
  const double star_shifted = inputs.f_star + c;
  const double G = inputs.G_inf.value_or(max_gradient_norm(trace));
  const double LF = compute_LF(inputs.L, G, star_shifted);
  const double omm = (1.0 - mu) * (1.0 - mu);
  const double D1 = LF * n * shifted0 / omm;
  const double D2 = 0.5 * (1.0 + 1.0 / omm) * n * std::sqrt(shifted0);
  const double level = std::sqrt(star_shifted);
  const double min_r = trace.energy_at(trace.length()).minCoeff();

  BoundReport report;
  report.constants = {{"L", inputs.L}, {"G_inf", G}, {"L_F", LF}, {"D1", D1},   {"D2", D2},
                      {"eta", eta},    {"mu", mu},   {"n", n},    {"T", T},     {"min_r_T", min_r}};
  if (!trace.config.stochastic) {
    const bool condition = eta * D1 + mu * D2 < level;
    const double floor = level - eta * D1 - mu * D2;
    report = make_report("energy_floor", floor, min_r, condition ? floor < min_r : true);
    report.constants = {{"L", inputs.L}, {"G_inf", G}, {"L_F", LF},  {"D1", D1},        {"D2", D2},
                        {"eta", eta},    {"mu", mu},   {"n", n},     {"T", T},          {"min_r_T", min_r},
                        {"floor", floor}, {"condition_met", condition ? 1.0 : 0.0}};
    return report;
  }
  // Stochastic branch: the floor bounds E[r_T]; a single trace is only logged.
  double a = inputs.a.value_or(kInf);
  if (!inputs.a) {
    for (const TraceStep& s : trace.steps) a = std::min(a, s.value + c);
  }
  const double D3 = 1.0 / (2.0 * std::sqrt(a)) +
                    std::sqrt(G * G / (4.0 * a * a * a) + 1.0 / a) * std::sqrt(shifted0) / (1.0 - mu) *
                        std::sqrt(eta * n * T);
  const double floor = std::max(level - eta * D1 - mu * D2 - inputs.sigma * D3, 0.0);
  report = make_report("energy_floor", floor, min_r, true);
  report.constants = {{"L", inputs.L}, {"G_inf", G}, {"L_F", LF}, {"D1", D1}, {"D2", D2}, {"D3", D3},
                      {"sigma", inputs.sigma}, {"a", a}, {"eta", eta}, {"mu", mu}, {"n", n}, {"T", T},
                      {"min_r_T", min_r}, {"floor", floor}, {"condition_met", 0.0}};
  return report;
}

double ode_drift(const TrajectoryTrace& trace, const ScalarFunction& F, double horizon) {
  require_energy_trace(trace, "ode_drift");
  if (!trace.config.constant_schedule) throw Error("ode drift needs a constant learning rate");
  const double eta = base_eta(trace);
  const double mu = trace.config.mu;
  const double F0 = F(trace.theta_at(0));
  double drift = 0.0;
  for (std::size_t t = 0; t <= trace.length(); ++t) {
    if (static_cast<double>(t) * eta > horizon * (1.0 + 1e-12)) break;
    const double Ft = F(trace.theta_at(t));
    const Vector& r = trace.energy_at(t);
    for (Index i = 0; i < r.size(); ++i) {
      drift = std::max(drift, std::abs(r[i] - (1.0 - mu) * Ft - mu * F0));
    }
  }
  return drift;
}

BoundReport check_ode_conservation(const TrajectoryTrace& coarse, const TrajectoryTrace& fine, const ScalarFunction& F) {
  const double eta_c = base_eta(coarse);
  const double eta_f = base_eta(fine);
  if (std::abs(2.0 * eta_f - eta_c) > 1e-12 * eta_c) {
    throw Error("ode conservation compares a run against one with half its learning rate");
  }
  if (coarse.config.mu != fine.config.mu) throw Error("ode conservation runs must share mu");
  const double horizon = std::min(static_cast<double>(coarse.length()) * eta_c, static_cast<double>(fine.length()) * eta_f);
  const double drift_coarse = ode_drift(coarse, F, horizon);
  const double drift_fine = ode_drift(fine, F, horizon);
  const double rhs = tolerance::ode_decay_ratio * drift_coarse;
  BoundReport report = make_report("ode_conservation", drift_fine, rhs, drift_fine <= rhs);
  report.constants = {{"drift_coarse", drift_coarse}, {"drift_fine", drift_fine}, {"eta_coarse", eta_c},
                      {"eta_fine", eta_f},            {"horizon", horizon},       {"mu", coarse.config.mu}};
  return report;
}

double fit_growth_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("growth fit needs at least two matched points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double count = static_cast<double>(x.size());
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

std::vector<BoundReport> standard_checks(const TrajectoryTrace& trace) {
  std::vector<BoundReport> reports;
  if (!trace.uses_energy() || !trace.full()) return reports;
  reports.push_back(check_energy_monotone(trace));
  reports.push_back(check_energy_telescoping(trace));
  if (trace.config.constant_schedule && !trace.empty()) {
    reports.push_back(check_step_sum_bound(trace));
    reports.push_back(check_G_bound(trace));
    reports.push_back(check_v_average_bound(trace));
  }
  return reports;
}

}  // namespace aegdm
