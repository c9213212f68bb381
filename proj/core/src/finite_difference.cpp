#include "aegdm/finite_difference.hpp"

#include "aegdm/error.hpp"

namespace aegdm {

Vector finite_difference_gradient(const ScalarFunction& f, const Vector& theta, double h) {
  if (!(h > 0.0)) throw Error("finite-difference step must be positive");
  Vector grad(theta.size());
  Vector probe = theta;
  for (Index i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + h;
    const double up = f(probe);
    probe[i] = theta[i] - h;
    const double down = f(probe);
    probe[i] = theta[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace aegdm
