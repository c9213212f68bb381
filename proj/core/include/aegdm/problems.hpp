#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aegdm/evaluation.hpp"
#include "aegdm/linalg.hpp"

namespace aegdm {

/// Per-run random engine. Each run owns one; nothing here is shared.
using Rng = std::mt19937_64;

/// Axis-aligned feasible box used for projection by clipping.
struct Box {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
  Vector clip(const Vector& theta) const;
};

/// An objective the harness can drive. `sample` yields the realization f_t
/// used at step t; `evaluate` is the full (deterministic) objective f.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string id() const = 0;
  virtual Index dimension() const = 0;
  virtual Vector initial_point() const = 0;

  virtual Evaluation evaluate(const Vector& theta) const = 0;
  virtual double value(const Vector& theta) const { return evaluate(theta).value; }

  /// Realization for step t. Deterministic problems ignore `rng`.
  virtual Evaluation sample(const Vector& theta, std::size_t t, Rng& rng) const;
  virtual bool stochastic() const { return false; }

  /// Known minimum value f*, if any.
  virtual std::optional<double> optimal_value() const { return std::nullopt; }
  /// Gradient Lipschitz constant L, if known.
  virtual std::optional<double> smoothness() const { return std::nullopt; }
};

// Rosenbrock ----------------------------------------------------------------

/// (1 - x1)^2 + 100 (x2 - x1^2)^2 with closed-form gradient.
Evaluation rosenbrock_eval(const Vector& theta);

class Rosenbrock final : public Problem {
 public:
  explicit Rosenbrock(Vector start = default_start());
  static Vector default_start();

  std::string id() const override { return "rosenbrock"; }
  Index dimension() const override { return 2; }
  Vector initial_point() const override { return start_; }
  Evaluation evaluate(const Vector& theta) const override { return rosenbrock_eval(theta); }
  std::optional<double> optimal_value() const override { return 0.0; }

 private:
  Vector start_;
};

// Quadratic -----------------------------------------------------------------

/// 1/2 theta^T Q theta - b^T theta + shift, shift = 1/2 b^T Q^{-1} b so the
/// minimum value is exactly 0. Throws NonSPD unless Q is symmetric positive
/// definite.
Evaluation quadratic_eval(const Vector& theta, const Matrix& Q, const Vector& b);

class Quadratic final : public Problem {
 public:
  Quadratic(Matrix Q, Vector b, Vector start);

  /// Random SPD instance with eigenvalues spread over [1, condition].
  static Quadratic random(Index n, double condition, std::uint64_t seed);

  std::string id() const override { return "quadratic"; }
  Index dimension() const override { return b_.size(); }
  Vector initial_point() const override { return start_; }
  Evaluation evaluate(const Vector& theta) const override;
  std::optional<double> optimal_value() const override { return 0.0; }
  std::optional<double> smoothness() const override { return lambda_max_; }

  const Matrix& hessian() const { return Q_; }
  const Vector& linear_term() const { return b_; }
  Vector minimizer() const;

 private:
  Matrix Q_;
  Vector b_;
  Vector start_;
  double shift_ = 0.0;
  double lambda_max_ = 0.0;
};

// Finite sums ---------------------------------------------------------------

/// Labelled rows; features are rows of `x`.
struct Dataset {
  Matrix x;
  Vector y;

  Index rows() const { return x.rows(); }
  Index features() const { return x.cols(); }
};

enum class LossKind { least_squares, logistic };

/// Linear model y = x w + noise. For logistic loss labels are mapped to
/// {-1, +1} by the sign of the noisy response.
Dataset synthetic_dataset(LossKind loss, Index rows, Index features, double noise, std::uint64_t seed);

/// 1/2 (x^T theta - y)^2.
Evaluation least_squares_component(const Vector& theta, const Eigen::Ref<const Vector>& x, double y);
/// log(1 + exp(-y x^T theta)), y in {-1, +1}.
Evaluation logistic_component(const Vector& theta, const Eigen::Ref<const Vector>& x, double y);

/// f(theta) = 1/m sum_j L_j(theta) with optional l2 term lambda/2 |theta|^2
/// folded into every component. Minibatches follow b-minibatch sampling.
class FiniteSumProblem final : public Problem {
 public:
  FiniteSumProblem(LossKind loss, Dataset data, std::size_t batch_size, double weight_decay = 0.0,
                   std::optional<Vector> start = std::nullopt);

  std::string id() const override;
  Index dimension() const override { return data_.features(); }
  Vector initial_point() const override { return start_; }

  Evaluation evaluate(const Vector& theta) const override;
  Evaluation sample(const Vector& theta, std::size_t t, Rng& rng) const override;
  bool stochastic() const override { return batch_size_ < component_count(); }
  std::optional<double> smoothness() const override { return smoothness_; }

  std::size_t component_count() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t batch_size() const { return batch_size_; }
  LossKind loss() const { return loss_; }
  const Dataset& data() const { return data_; }

  Evaluation component(std::size_t j, const Vector& theta) const;
  /// Mean of the listed components; `ids` must be sorted and unique.
  Evaluation evaluate_batch(const Vector& theta, const std::vector<std::size_t>& ids) const;
  /// xi-weighted form 1/m sum_j xi_j L_j.
  Evaluation evaluate_weighted(const Vector& theta, const Vector& xi) const;

  /// Smallest c that certifies L_j + c > 0 everywhere (0 for both losses).
  double lower_bound_shift() const { return 0.0; }

 private:
  LossKind loss_;
  Dataset data_;
  std::size_t batch_size_;
  double weight_decay_;
  Vector start_;
  double smoothness_ = 0.0;
};

// b-minibatch sampling --------------------------------------------------------

/// Uniform size-b subset of {0..m-1}, sorted. Throws InvalidBatch unless 1 <= b <= m.
std::vector<std::size_t> b_minibatch_ids(std::size_t m, std::size_t b, Rng& rng);

/// xi = (m/b) sum_{i in M} e_i for a given subset.
Vector sampling_vector(std::size_t m, const std::vector<std::size_t>& ids);

/// Draws M and returns its sampling vector.
Vector b_minibatch_sample(std::size_t m, std::size_t b, Rng& rng);

}  // namespace aegdm
