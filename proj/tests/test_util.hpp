#ifndef POLYINEQ_TESTS_TEST_UTIL_HPP_
#define POLYINEQ_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "polyineq/poly_series.hpp"

namespace polyineq::testing {

inline double urand(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on the closed disc of the given radius.
inline Complex crand(std::mt19937_64& rng, double radius = 1.0) {
  const double r = radius * std::sqrt(urand(rng));
  const double theta = 2.0 * std::numbers::pi * urand(rng);
  return Complex(r * std::cos(theta), r * std::sin(theta));
}

inline Complex circle_point(double angle_fraction) {
  const double theta = 2.0 * std::numbers::pi * angle_fraction;
  return Complex(std::cos(theta), std::sin(theta));
}

// Dense random polynomial with coefficients uniform on a disc.
inline PolySeries random_poly(std::mt19937_64& rng, int n, int degree,
                              double scale = 1.0) {
  PolySeries f(n, std::vector<int>(static_cast<std::size_t>(n), degree));
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  while (true) {
    f.set_coeff(MultiIndex(alpha), crand(rng, scale));
    int axis = n - 1;
    while (axis >= 0 && alpha[static_cast<std::size_t>(axis)] == degree) {
      alpha[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
    ++alpha[static_cast<std::size_t>(axis)];
  }
  return f;
}

inline std::vector<Complex> random_interior(std::mt19937_64& rng, int n,
                                            double radius) {
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (auto& v : z) v = crand(rng, radius);
  return z;
}

}  // namespace polyineq::testing

#endif  // POLYINEQ_TESTS_TEST_UTIL_HPP_
