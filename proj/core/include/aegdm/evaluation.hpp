#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aegdm/linalg.hpp"

namespace aegdm {

/// One realization f_t(theta_t) together with its gradient.
///
/// For finite-sum problems `sample_ids` lists the minibatch the value was
/// averaged over; it is empty for deterministic and online objectives.
struct Evaluation {
  double value = 0.0;
  Vector gradient;
  std::optional<std::vector<std::size_t>> sample_ids;
  std::size_t t = 0;
};

}  // namespace aegdm
