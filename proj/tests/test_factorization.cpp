#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "polyineq/errors.hpp"
#include "polyineq/factorization.hpp"
#include "polyineq/quadrature.hpp"
#include "test_util.hpp"

using namespace polyineq;
using polyineq::testing::circle_point;
using polyineq::testing::crand;
using polyineq::testing::urand;

namespace {

PolySeries poly_from_roots(Complex lead, const std::vector<Complex>& roots) {
  PolySeries f(1, {0});
  f.set_coeff(MultiIndex({0}), lead);
  for (const Complex& a : roots) {
    PolySeries factor(1, {1});
    factor.set_coeff(MultiIndex({0}), -a);
    factor.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));
    f = multiply(f, factor);
  }
  return f;
}

}  // namespace

TEST_CASE("planted roots are recovered and classified") {
  const std::vector<Complex> planted = {Complex(0.5, 0.1), Complex(-0.3, -0.6),
                                        Complex(1.7, 0.4), Complex(0.0, 1.8)};
  const PolySeries f = poly_from_roots(Complex(2.0, -1.0), planted);
  const RootSet roots = polynomial_roots(f);
  REQUIRE(roots.roots.size() == planted.size());

  std::vector<Complex> sorted = planted;
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    CHECK(std::abs(roots.roots[i].location - sorted[i]) < 1e-10);
    CHECK(roots.roots[i].residual < 1e-10);
    const RootLocation expect = std::abs(sorted[i]) < 1.0
                                    ? RootLocation::kInside
                                    : RootLocation::kOutside;
    CHECK(roots.roots[i].cls == expect);
  }
}

TEST_CASE("root finding edge cases") {
  PolySeries zero(1, {3});
  CHECK_THROWS_AS(polynomial_roots(zero), DomainError);

  PolySeries constant(1, {0});
  constant.set_coeff(MultiIndex({0}), Complex(3.0, 0.0));
  CHECK(polynomial_roots(constant).roots.empty());

  // A root sitting on the circle lands in the boundary class.
  const PolySeries f = poly_from_roots(Complex(1.0, 0.0), {Complex(1.0, 0.0)});
  const RootSet roots = polynomial_roots(f, 1e-6);
  REQUIRE(roots.roots.size() == 1);
  CHECK(roots.roots[0].cls == RootLocation::kBoundary);
}

TEST_CASE("blaschke product is unimodular on the circle") {
  BlaschkeProduct b;
  b.zeros = {Complex(0.5, 0.2), Complex(-0.1, -0.7)};
  b.origin_order = 1;
  CHECK(b.degree() == 3);
  for (int k = 0; k < 32; ++k) {
    const Complex zeta = circle_point((k + 0.5) / 32.0);
    CHECK(std::abs(b.eval(zeta)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (const Complex& a : b.zeros) {
    CHECK(std::abs(b.eval(a)) < 1e-14);
  }
  CHECK(std::abs(b.eval(Complex(0.0, 0.0))) < 1e-14);
  CHECK(std::abs(b.eval(Complex(0.3, 0.0))) < 1.0);
}

TEST_CASE("boundary modulus validates its samples") {
  const std::vector<double> few = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(BoundaryModulus{few}, DomainError);  // too few
  std::vector<double> bad(16, 1.0);
  bad[7] = 0.0;
  CHECK_THROWS_AS(BoundaryModulus{bad}, DomainError);
  std::vector<double> good(16, 1.0);
  CHECK(BoundaryModulus(good).size() == 16);
}

TEST_CASE("outer function rebuilds a zero-free modulus") {
  // g = 2 + z is zero-free in the closed disc, so |g| on the circle
  // determines it up to a unimodular constant.
  const int n_samples = 4096;
  std::vector<double> samples(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    samples[static_cast<std::size_t>(k)] =
        std::abs(Complex(2.0, 0.0) + circle_point(double(k) / n_samples));
  }
  const OuterFunction outer{BoundaryModulus(samples)};

  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex z = crand(rng, 0.9);
    const double expect = std::abs(Complex(2.0, 0.0) + z);
    CHECK(std::abs(outer.eval(z)) == doctest::Approx(expect).epsilon(1e-6));
  }
  // Herglotz normalization: the origin value is the geometric mean,
  // real and positive.
  const Complex at0 = outer.eval(Complex(0.0, 0.0));
  CHECK(at0.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(at0.real() > 0.0);
}

TEST_CASE("outer function handles a boundary zero with odd oversampling") {
  // U = |1 + zeta| vanishes at zeta = -1; an odd N keeps every sample
  // positive and the reconstruction converges, just slowly.
  const int n_samples = (1 << 21) + 1;
  std::vector<double> samples(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    samples[static_cast<std::size_t>(k)] =
        std::abs(Complex(1.0, 0.0) + circle_point(double(k) / n_samples));
  }
  const OuterFunction outer{BoundaryModulus(samples)};
  for (const Complex z : {Complex(0.3, 0.0), Complex(-0.2, 0.4)}) {
    const double expect = std::abs(Complex(1.0, 0.0) + z);
    CHECK(std::abs(outer.eval(z)) == doctest::Approx(expect).epsilon(1e-4));
  }
}

TEST_CASE("riesz factorization preserves norms and strips inside zeros") {
  std::mt19937_64 rng(40004);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> roots;
    const int inside = 1 + static_cast<int>(rng() % 3);
    const int outside = static_cast<int>(rng() % 3);
    for (int i = 0; i < inside; ++i) roots.push_back(crand(rng, 0.8));
    for (int i = 0; i < outside; ++i) {
      roots.push_back(crand(rng, 0.8) + Complex(2.5, 0.0));
    }
    const PolySeries f = poly_from_roots(Complex(1.0, 0.5), roots);

    for (const double p : {0.5, 1.0, 2.0, 4.0}) {
      const RieszFactorization fac = riesz_factorize(f, p);
      CHECK(fac.norm_gap <= 1e-8 * std::max(fac.f_norm, 1e-300));
      CHECK(fac.min_h_near_boundary > 0.0);

      // h must be zero-free in the closed disc.
      const RootSet h_roots = polynomial_roots(fac.outer_factor);
      for (const RootRecord& rec : h_roots.roots) {
        CHECK(rec.cls == RootLocation::kOutside);
      }

      // |f| = |B h| on the circle.
      for (int k = 0; k < 16; ++k) {
        const Complex zeta = circle_point((k + 0.25) / 16.0);
        const double lhs = std::abs(f.eval(zeta));
        const double rhs = std::abs(fac.blaschke.eval(zeta)) *
                           std::abs(fac.outer_factor.eval(zeta));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("riesz factorization rejects boundary-band zeros") {
  const PolySeries f =
      poly_from_roots(Complex(1.0, 0.0), {Complex(1.0 - 1e-12, 0.0)});
  CHECK_THROWS_AS(riesz_factorize(f, 2.0), NumericalError);
}

TEST_CASE("fractional power squares back to the base function") {
  PolySeries h(1, {1});
  h.set_coeff(MultiIndex({0}), Complex(2.0, 0.0));
  h.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));
  const FractionalPower g = fractional_power(h, 0.5);

  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const Complex z = crand(rng, 0.999);
    const double expect = std::abs(h.eval(z));
    const double got = std::norm(g.eval(z));
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  }

  // mean |h^{1/2}|^4 over the circle = mean |h|^2 = 4 + 1 = 5, and the
  // trapezoid rule is exact for this frequency-1 trigonometric sum.
  const int n_grid = 64;
  double mean = 0.0;
  for (int k = 0; k < n_grid; ++k) {
    const double a = std::abs(g.eval(circle_point(double(k) / n_grid)));
    mean += a * a * a * a;
  }
  mean /= n_grid;
  CHECK(mean == doctest::Approx(5.0).epsilon(1e-12));

  const FractionalPower identity = fractional_power(h, 1.0);
  const Complex z0(0.4, -0.3);
  CHECK(std::abs(identity.eval(z0) - h.eval(z0)) < 1e-12);
}
