#include "polyineq/random_function.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "polyineq/errors.hpp"

namespace polyineq {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex draw_coefficient(std::mt19937_64& rng, CoefficientLaw law) {
  const double u = uniform01(rng);
  const double v = uniform01(rng);
  const double theta = 2.0 * std::numbers::pi * v;
  double r;
  switch (law) {
    case CoefficientLaw::kUniformDisc:
      r = std::sqrt(u);
      break;
    case CoefficientLaw::kGaussian:
      // Standard circular Gaussian: |c|^2 exponential with mean one.
      r = std::sqrt(-std::log(std::max(u, 0x1.0p-70)));
      break;
    default:
      throw DomainError("generate_random_function: unknown coefficient law");
  }
  return Complex(r * std::cos(theta), r * std::sin(theta));
}

}  // namespace

PolySeries generate_random_function(unsigned long long seed, int n,
                                    const std::vector<int>& degree,
                                    CoefficientLaw law) {
  if (n < 1) throw DomainError("generate_random_function: n must be >= 1");
  if (static_cast<int>(degree.size()) != n) {
    throw DimensionError("generate_random_function: one degree cap per axis required");
  }
  for (int d : degree) {
    if (d < 0) throw DomainError("generate_random_function: negative degree cap");
  }

  std::mt19937_64 rng(seed);
  while (true) {
    PolySeries f(n, degree);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      f.set_coeff(MultiIndex(idx), draw_coefficient(rng, law));
      int axis = n - 1;
      while (axis >= 0) {
        auto au = static_cast<std::size_t>(axis);
        if (++idx[au] <= degree[au]) break;
        idx[au] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
    if (!f.is_zero()) return f;
  }
}

PolySeries generate_random_function(unsigned long long seed, int n, int degree,
                                    CoefficientLaw law) {
  return generate_random_function(
      seed, n, std::vector<int>(static_cast<std::size_t>(n), degree), law);
}

std::vector<Complex> random_interior_point(unsigned long long seed, int n,
                                           double max_radius) {
  if (n < 1) throw DomainError("random_interior_point: n must be >= 1");
  if (!(max_radius >= 0.0) || !(max_radius < 1.0)) {
    throw DomainError("random_interior_point: radius must lie in [0,1)");
  }
  std::mt19937_64 rng(seed);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double r = max_radius * std::sqrt(uniform01(rng));
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    z[static_cast<std::size_t>(j)] = Complex(r * std::cos(theta), r * std::sin(theta));
  }
  return z;
}

unsigned long long derive_seed(unsigned long long seed, unsigned long long salt) {
  unsigned long long x = seed + 0x9e3779b97f4a7c15ull * (salt + 1); // splitmix64 step
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

}  // namespace polyineq
