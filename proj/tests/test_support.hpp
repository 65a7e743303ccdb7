#ifndef ELASTICA_TEST_SUPPORT_HPP
#define ELASTICA_TEST_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "elastica/core.hpp"

namespace elastica::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261017);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline ReducedMomenta random_momenta(int k, double lo = -2.0, double hi = 2.0) {
  std::vector<double> v(static_cast<std::size_t>(k + 2));
  for (double& x : v) x = uniform(lo, hi);
  return ReducedMomenta(v);
}

/// Random momenta with H = 1/2.
inline ReducedMomenta random_unit_momenta(int k, double lo = -1.0, double hi = 1.0) {
  auto P = random_momenta(k, lo, hi);
  const double th = uniform(-M_PI, M_PI);
  P.P(1) = std::cos(th);
  P.P(2) = std::sin(th);
  return P;
}

}  // namespace elastica::testing

#endif  // ELASTICA_TEST_SUPPORT_HPP
