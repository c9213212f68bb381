#include "aegdm/problems.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <numeric>
#include <utility>

#include "aegdm/error.hpp"

namespace aegdm {

Vector Box::clip(const Vector& theta) const { return theta.cwiseMax(lower).cwiseMin(upper); }

Evaluation Problem::sample(const Vector& theta, std::size_t t, Rng& /*rng*/) const {
  Evaluation e = evaluate(theta);
  e.t = t;
  return e;
}

// Rosenbrock ----------------------------------------------------------------

Evaluation rosenbrock_eval(const Vector& theta) {
  const double x1 = theta[0];
  const double x2 = theta[1];
  const double a = 1.0 - x1;
  const double valley = x2 - x1 * x1;
  Evaluation e;
  e.value = a * a + 100.0 * valley * valley;
  e.gradient.resize(2);
  e.gradient[0] = -2.0 * a - 400.0 * x1 * valley;
  e.gradient[1] = 200.0 * valley;
  return e;
}

Rosenbrock::Rosenbrock(Vector start) : start_(std::move(start)) {
  if (start_.size() != 2) {
    throw Error("rosenbrock start must have 2 coordinates");
  }
}

Vector Rosenbrock::default_start() { return Vector{{-3.0, -4.0}}; }

// Quadratic -----------------------------------------------------------------

namespace {

Eigen::LLT<Matrix> factor_spd(const Matrix& Q) {
  if (Q.rows() != Q.cols() || !Q.isApprox(Q.transpose(), 1e-12)) {
    throw NonSPD("Q must be square and symmetric");
  }
  Eigen::LLT<Matrix> llt(Q);
  if (llt.info() != Eigen::Success) {
    throw NonSPD("Cholesky factorization of Q failed");
  }
  return llt;
}

double quadratic_shift(const Eigen::LLT<Matrix>& llt, const Vector& b) { return 0.5 * b.dot(llt.solve(b)); }

}  // namespace

Evaluation quadratic_eval(const Vector& theta, const Matrix& Q, const Vector& b) {
  const auto llt = factor_spd(Q);
  const Vector qx = Q * theta;
  Evaluation e;
  e.value = 0.5 * theta.dot(qx) - b.dot(theta) + quadratic_shift(llt, b);
  e.gradient = qx - b;
  return e;
}

Quadratic::Quadratic(Matrix Q, Vector b, Vector start) : Q_(std::move(Q)), b_(std::move(b)), start_(std::move(start)) {
  const auto llt = factor_spd(Q_);
  if (b_.size() != Q_.rows() || start_.size() != Q_.rows()) {
    throw Error("quadratic dimensions disagree");
  }
  shift_ = quadratic_shift(llt, b_);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Q_, Eigen::EigenvaluesOnly);
  lambda_max_ = eig.eigenvalues().maxCoeff();
}

Quadratic Quadratic::random(Index n, double condition, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = normal(rng);
  const Matrix basis = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector spectrum(n);
  for (Index i = 0; i < n; ++i) {
    spectrum[i] = n == 1 ? 1.0 : 1.0 + (condition - 1.0) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  Matrix Q = basis * spectrum.asDiagonal() * basis.transpose();
  Q = 0.5 * (Q + Q.transpose()).eval();
  Vector b(n);
  for (Index i = 0; i < n; ++i) b[i] = normal(rng);
  const Vector minimizer = Q.llt().solve(b);
  Vector start(n);
  for (Index i = 0; i < n; ++i) start[i] = minimizer[i] + normal(rng);
  return Quadratic(std::move(Q), std::move(b), std::move(start));
}

Evaluation Quadratic::evaluate(const Vector& theta) const {
  const Vector qx = Q_ * theta;
  Evaluation e;
  e.value = 0.5 * theta.dot(qx) - b_.dot(theta) + shift_;
  e.gradient = qx - b_;
  return e;
}

Vector Quadratic::minimizer() const { return Q_.llt().solve(b_); }

// Finite sums ---------------------------------------------------------------

Dataset synthetic_dataset(LossKind loss, Index rows, Index features, double noise, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector w(features);
  for (Index k = 0; k < features; ++k) w[k] = normal(rng);
  Dataset data;
  data.x.resize(rows, features);
  data.y.resize(rows);
  const double scale = 1.0 / std::sqrt(static_cast<double>(features));
  for (Index j = 0; j < rows; ++j) {
    for (Index k = 0; k < features; ++k) data.x(j, k) = normal(rng);
    const double response = scale * data.x.row(j).dot(w) + noise * normal(rng);
    data.y[j] = loss == LossKind::logistic ? (response >= 0.0 ? 1.0 : -1.0) : response;
  }
  return data;
}

Evaluation least_squares_component(const Vector& theta, const Eigen::Ref<const Vector>& x, double y) {
  const double residual = x.dot(theta) - y;
  Evaluation e;
  e.value = 0.5 * residual * residual;
  e.gradient = residual * x;
  return e;
}

Evaluation logistic_component(const Vector& theta, const Eigen::Ref<const Vector>& x, double y) {
  const double z = y * x.dot(theta);
  Evaluation e;
  // log(1 + exp(-z)) and sigma(-z) without overflow for large |z|.
  if (z >= 0.0) {
    const double ez = std::exp(-z);
    e.value = std::log1p(ez);
    e.gradient = (-y * ez / (1.0 + ez)) * x;
  } else {
    const double ez = std::exp(z);
    e.value = -z + std::log1p(ez);
    e.gradient = (-y / (1.0 + ez)) * x;
  }
  return e;
}

FiniteSumProblem::FiniteSumProblem(LossKind loss, Dataset data, std::size_t batch_size, double weight_decay,
                                   std::optional<Vector> start)
    : loss_(loss), data_(std::move(data)), batch_size_(batch_size), weight_decay_(weight_decay) {
  if (data_.rows() == 0 || data_.features() == 0 || data_.y.size() != data_.rows()) {
    throw Error("dataset must be nonempty with one label per row");
  }
  if (batch_size_ < 1 || batch_size_ > component_count()) {
    throw InvalidBatch("batch size must satisfy 1 <= b <= m");
  }
  if (weight_decay_ < 0.0) {
    throw RangeError("weight decay must be nonnegative");
  }
  start_ = start ? *start : Vector::Zero(data_.features());
  if (start_.size() != data_.features()) {
    throw Error("start point has wrong dimension");
  }
  const Matrix gram = data_.x.transpose() * data_.x / static_cast<double>(data_.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  smoothness_ = (loss_ == LossKind::logistic ? 0.25 * top : top) + weight_decay_;
}

std::string FiniteSumProblem::id() const {
  return loss_ == LossKind::logistic ? "logistic" : "least_squares";
}

Evaluation FiniteSumProblem::component(std::size_t j, const Vector& theta) const {
  const auto row = data_.x.row(static_cast<Index>(j)).transpose();
  const double label = data_.y[static_cast<Index>(j)];
  Evaluation e = loss_ == LossKind::logistic ? logistic_component(theta, row, label)
                                             : least_squares_component(theta, row, label);
  if (weight_decay_ > 0.0) {
    e.value += 0.5 * weight_decay_ * theta.squaredNorm();
    e.gradient += weight_decay_ * theta;
  }
  return e;
}

Evaluation FiniteSumProblem::evaluate_batch(const Vector& theta, const std::vector<std::size_t>& ids) const {
  Evaluation total;
  total.gradient = Vector::Zero(theta.size());
  for (std::size_t j : ids) {
    Evaluation e = component(j, theta);
    total.value += e.value;
    total.gradient += e.gradient;
  }
  const double count = static_cast<double>(ids.size());
  total.value /= count;
  total.gradient /= count;
  return total;
}

Evaluation FiniteSumProblem::evaluate_weighted(const Vector& theta, const Vector& xi) const {
  if (static_cast<std::size_t>(xi.size()) != component_count()) {
    throw Error("sampling vector length must equal the component count");
  }
  Evaluation total;
  total.gradient = Vector::Zero(theta.size());
  for (std::size_t j = 0; j < component_count(); ++j) {
    const double w = xi[static_cast<Index>(j)];
    if (w == 0.0) continue;
    Evaluation e = component(j, theta);
    total.value += w * e.value;
    total.gradient += w * e.gradient;
  }
  const double m = static_cast<double>(component_count());
  total.value /= m;
  total.gradient /= m;
  return total;
}

Evaluation FiniteSumProblem::evaluate(const Vector& theta) const {
  std::vector<std::size_t> all(component_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return evaluate_batch(theta, all);
}

Evaluation FiniteSumProblem::sample(const Vector& theta, std::size_t t, Rng& rng) const {
  std::vector<std::size_t> ids = b_minibatch_ids(component_count(), batch_size_, rng);
  Evaluation e = evaluate_batch(theta, ids);
  e.sample_ids = std::move(ids);
  e.t = t;
  return e;
}

}  // namespace aegdm
