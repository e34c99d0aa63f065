#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "dressed/model.hpp"

namespace testing {

inline constexpr double pi = std::numbers::pi;

// e1 = 0, hbar = 1, e2 chosen for the requested detuning.
inline dressed::AtomConfig atom(double wt, double j0, double omega) {
  dressed::AtomConfig a;
  a.e1 = 0.0;
  a.e2 = omega + 2.0 * wt;
  a.omega_drive = omega;
  a.j0 = j0;
  a.hbar = 1.0;
  return a;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace testing
