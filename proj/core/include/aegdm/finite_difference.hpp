#pragma once

#include <functional>

#include "aegdm/linalg.hpp"

namespace aegdm {

using ScalarFunction = std::function<double(const Vector&)>;

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h per coordinate.
Vector finite_difference_gradient(const ScalarFunction& f, const Vector& theta, double h = 1e-6);

}  // namespace aegdm
