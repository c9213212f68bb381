#include "aegdm/online.hpp"

#include <utility>

#include "aegdm/error.hpp"

namespace aegdm {

OnlineSequence::OnlineSequence(Matrix targets, Box feasible, bool with_comparator)
    : targets_(std::move(targets)), feasible_(feasible) {
  if (targets_.rows() < 1 || targets_.cols() < 1) {
    throw Error("online sequence needs T >= 1 and dim >= 1");
  }
  if (!(feasible_.upper > feasible_.lower)) {
    throw Error("feasible box must have positive width");
  }
  if (with_comparator) {
    // argmin of sum_t 1/2 |theta - a_t|^2 over a box is the clipped mean.
    comparator_ = feasible_.clip(targets_.colwise().mean().transpose());
  }
}

double OnlineSequence::cost(std::size_t t, const Vector& theta) const {
  return 0.5 * (theta - targets_.row(static_cast<Index>(t)).transpose()).squaredNorm();
}

Evaluation OnlineSequence::evaluate(std::size_t t, const Vector& theta) const {
  if (t >= horizon()) {
    throw Error("online sequence exhausted at t=" + std::to_string(t));
  }
  Evaluation e;
  e.gradient = theta - targets_.row(static_cast<Index>(t)).transpose();
  e.value = 0.5 * e.gradient.squaredNorm();
  e.t = t;
  return e;
}

double OnlineSequence::cumulative_cost(const Vector& theta, std::size_t horizon) const {
  double total = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) total += cost(t, theta);
  return total;
}

OnlineSequence online_quadratic_sequence(std::size_t T, Index dim, Rng& rng, Box target_box, Box feasible) {
  if (T < 1) throw Error("online sequence needs T >= 1");
  std::uniform_real_distribution<double> draw(target_box.lower, target_box.upper);
  Matrix targets(static_cast<Index>(T), dim);
  for (Index t = 0; t < targets.rows(); ++t)
    for (Index i = 0; i < dim; ++i) targets(t, i) = draw(rng);
  return OnlineSequence(std::move(targets), feasible);
}

OnlineQuadratic::OnlineQuadratic(OnlineSequence sequence, Vector start)
    : sequence_(std::move(sequence)), start_(std::move(start)) {
  if (start_.size() != sequence_.dimension()) {
    throw Error("start point has wrong dimension");
  }
}

Evaluation OnlineQuadratic::evaluate(const Vector& theta) const {
  const double horizon = static_cast<double>(sequence_.horizon());
  Evaluation e;
  e.gradient = theta - sequence_.targets().colwise().mean().transpose();
  e.value = sequence_.cumulative_cost(theta, sequence_.horizon()) / horizon;
  return e;
}

Evaluation OnlineQuadratic::sample(const Vector& theta, std::size_t t, Rng& /*rng*/) const {
  return sequence_.evaluate(t, theta);
}

}  // namespace aegdm
