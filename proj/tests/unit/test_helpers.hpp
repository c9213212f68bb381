#pragma once

#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "aegdm/linalg.hpp"

namespace aegdm::test {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline bool close(double a, double b, double rel = 1e-14) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline void check_vec(const Vector& got, std::initializer_list<double> want, double rel = 1e-14) {
  REQUIRE(got.size() == static_cast<Index>(want.size()));
  Index i = 0;
  for (double w : want) {
    CHECK_MESSAGE(close(got[i], w, rel), "coordinate ", i, ": ", got[i], " vs ", w);
    ++i;
  }
}

}  // namespace aegdm::test
