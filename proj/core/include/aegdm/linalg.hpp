#pragma once

#include <Eigen/Core>

namespace aegdm {

/// Dense parameter vector. All optimizer and problem state is 64-bit.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace aegdm
