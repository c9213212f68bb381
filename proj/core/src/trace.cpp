#include "aegdm/trace.hpp"

#include <algorithm>
#include <cmath>

#include "aegdm/error.hpp"

namespace aegdm {

bool TrajectoryTrace::full() const {
  return std::all_of(steps.begin(), steps.end(), [](const TraceStep& s) { return s.has_vectors(); });
}

const Vector& TrajectoryTrace::energy_at(std::size_t t) const {
  if (t == steps.size()) return r_final;
  if (t > steps.size() || !steps[t].has_vectors()) {
    throw Error("energy r_" + std::to_string(t) + " was not recorded");
  }
  return steps[t].r;
}

const Vector& TrajectoryTrace::theta_at(std::size_t t) const {
  if (t == steps.size()) return theta_final;
  if (t > steps.size() || !steps[t].has_vectors()) {
    throw Error("theta_" + std::to_string(t) + " was not recorded");
  }
  return steps[t].theta;
}

void TrajectoryTrace::validate() const {
  for (std::size_t t = 0; t < steps.size(); ++t) {
    if (steps[t].t != t) {
      throw Error("trace records are not contiguous at position " + std::to_string(t));
    }
    const Vector& r = steps[t].r;
    if (r.size() > 0 && !(r.array() >= 0.0).all()) {
      throw Error("energy became negative or NaN at t=" + std::to_string(t));
    }
  }
}

std::size_t direction_reversals(const TrajectoryTrace& trace, Index coord) {
  std::size_t reversals = 0;
  double previous = 0.0;
  for (const TraceStep& s : trace.steps) {
    if (!s.has_vectors()) continue;
    const double d = s.step[coord];
    if (d == 0.0) continue;
    if (previous != 0.0 && std::signbit(d) != std::signbit(previous)) ++reversals;
    previous = d;
  }
  return reversals;
}

std::optional<std::size_t> iterations_to_gap(const TrajectoryTrace& trace, double f_star, double gap) {
  for (const TraceStep& s : trace.steps) {
    if (s.value - f_star <= gap) return s.t;
  }
  if (trace.value_final && *trace.value_final - f_star <= gap) return trace.length();
  return std::nullopt;
}

}  // namespace aegdm
