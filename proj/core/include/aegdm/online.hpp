#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "aegdm/problems.hpp"

namespace aegdm {

/// Sequence of online costs f_t(theta) = 1/2 |theta - a_t|^2 revealed one per
/// step, with the fixed comparator theta* = argmin sum_t f_t over the
/// feasible box.
class OnlineSequence {
 public:
  /// `targets` holds a_t as rows. The comparator is computed on
  /// construction unless `with_comparator` is false.
  OnlineSequence(Matrix targets, Box feasible, bool with_comparator = true);

  std::size_t horizon() const { return static_cast<std::size_t>(targets_.rows()); }
  Index dimension() const { return targets_.cols(); }
  const Box& feasible_set() const { return feasible_; }
  /// Bound on |theta - theta'|_inf inside the feasible set.
  double d_inf() const { return feasible_.width(); }
  const std::optional<Vector>& comparator() const { return comparator_; }
  const Matrix& targets() const { return targets_; }

  double cost(std::size_t t, const Vector& theta) const;
  Evaluation evaluate(std::size_t t, const Vector& theta) const;
  /// sum_t f_t(theta) over the first `horizon` costs.
  double cumulative_cost(const Vector& theta, std::size_t horizon) const;

 private:
  Matrix targets_;
  Box feasible_;
  std::optional<Vector> comparator_;
};

/// a_t drawn i.i.d. uniform from `target_box` in every coordinate.
OnlineSequence online_quadratic_sequence(std::size_t T, Index dim, Rng& rng,
                                         Box target_box = {1.0, 3.0}, Box feasible = {0.0, 4.0});

/// Problem adapter so the harness can run an online sequence: sample(theta, t)
/// reveals f_t and evaluate() is the average cost 1/T sum_t f_t.
class OnlineQuadratic final : public Problem {
 public:
  OnlineQuadratic(OnlineSequence sequence, Vector start);

  std::string id() const override { return "online_quadratic"; }
  Index dimension() const override { return sequence_.dimension(); }
  Vector initial_point() const override { return start_; }
  Evaluation evaluate(const Vector& theta) const override;
  Evaluation sample(const Vector& theta, std::size_t t, Rng& rng) const override;
  bool stochastic() const override { return true; }
  std::optional<double> smoothness() const override { return 1.0; }

  const OnlineSequence& sequence() const { return sequence_; }

 private:
  OnlineSequence sequence_;
  Vector start_;
};

}  // namespace aegdm
