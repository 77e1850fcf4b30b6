#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "polyineq/errors.hpp"
#include "polyineq/kernels.hpp"
#include "polyineq/quadrature.hpp"
#include "test_util.hpp"

using namespace polyineq;
using polyineq::testing::crand;
using polyineq::testing::random_poly;
using polyineq::testing::urand;

namespace {

Complex monomial_pair(std::span<const Complex> z, int a, int b) {
  Complex v(1.0, 0.0);
  for (int k = 0; k < a; ++k) v *= z[0];
  for (int k = 0; k < b; ++k) v *= std::conj(z[0]);
  return v;
}

}  // namespace

TEST_CASE("torus rule integrates monomial pairs exactly below the cap") {
  const TorusRule rule(1, 8);
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      const Complex got = rule.integrate(
          [&](std::span<const Complex> z) { return monomial_pair(z, a, b); });
      const double expect = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(got - Complex(expect, 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("torus rule aliases frequencies at the exactness boundary") {
  // z^8 on 8 nodes aliases to the constant 1: the exactness condition
  // max(a + b) < N is sharp.
  const TorusRule rule(1, 8);
  const Complex got = rule.integrate(
      [&](std::span<const Complex> z) { return monomial_pair(z, 8, 0); });
  CHECK(std::abs(got - Complex(1.0, 0.0)) < 1e-13);
}

TEST_CASE("torus rule is exact per axis in two variables") {
  const TorusRule rule(2, 6);
  const Complex got = rule.integrate([&](std::span<const Complex> z) {
    return z[0] * z[0] * std::conj(z[0]) * std::conj(z[0]) * z[1] *
           std::conj(z[1]);
  });
  CHECK(std::abs(got - Complex(1.0, 0.0)) < 1e-14);
  const Complex mixed = rule.integrate(
      [&](std::span<const Complex> z) { return z[0] * std::conj(z[1]); });
  CHECK(std::abs(mixed) < 1e-14);
}

TEST_CASE("radial rule reproduces beta moments") {
  // Against the weight (q-1)(1-t)^{q-2}, the k-th moment of t is
  // (q-1) B(k+1, q-1).
  for (const double q : {2.0, 3.0, 3.5}) {
    const RadialRule rule = gauss_jacobi_radial(q, 8);
    double mass = 0.0;
    for (double w : rule.weight) mass += w;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
    for (double t : rule.t) {
      CHECK(t > 0.0);
      CHECK(t < 1.0);
    }
    for (int k = 0; k <= 15; ++k) {  // exact through degree 2*8 - 1
      double got = 0.0;
      for (std::size_t i = 0; i < rule.t.size(); ++i) {
        got += rule.weight[i] * std::pow(rule.t[i], k);
      }
      const double expect = (q - 1.0) * std::beta(double(k + 1), q - 1.0);
      CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(gauss_jacobi_radial(1.0, 4), Error);
  CHECK_THROWS_AS(gauss_jacobi_radial(2.0, 0), Error);
}

TEST_CASE("disc rule has unit mass and the right absolute moments") {
  for (const double q : {1.0, 2.0, 4.0}) {
    const DiscRule rule(1, q, 16, 8);
    const Complex mass =
        rule.integrate([](std::span<const Complex>) { return Complex(1.0, 0.0); });
    CHECK(std::abs(mass - Complex(1.0, 0.0)) < 1e-13);

    for (int k = 1; k <= 4; ++k) {
      const Complex got = rule.integrate([&](std::span<const Complex> z) {
        return Complex(std::pow(std::abs(z[0]), 2 * k), 0.0);
      });
      // E|z|^{2k} = (q-1) B(k+1, q-1) for q > 1; the boundary case is 1.
      const double expect =
          (q == 1.0) ? 1.0 : (q - 1.0) * std::beta(double(k + 1), q - 1.0);
      CHECK(std::abs(got - Complex(expect, 0.0)) < 1e-13);
    }
  }
  const DiscRule boundary(1, 1.0, 16, 12);
  CHECK(boundary.boundary_mode());
  for (const Complex& node : boundary.axis_nodes()) {
    CHECK(std::abs(node) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(DiscRule(1, 0.5, 8, 8), Error);
}

TEST_CASE("kernel self product integrates to the diagonal value") {
  // int |K_q(z, w)|^2 dA_{q-2}(z) = (1 - |w|^2)^{-q}.
  const double q = 2.5;
  const std::vector<Complex> w = {Complex(0.55, -0.2)};
  const PolySeries k = kernel_series(WeightVector(q, 1), w, 1e-10);
  const int deg = k.max_degree()[0];
  const DiscRule rule(1, q, deg + 2, 2 * deg + 3);
  const Complex got = rule.integrate([&](std::span<const Complex> z) {
    const double a = std::abs(k.eval(z));
    return Complex(a * a, 0.0);
  });
  const double expect = std::pow(1.0 - std::norm(w[0]), -q);
  CHECK(std::abs(got - Complex(expect, 0.0)) <= 1e-9 * expect);
}

TEST_CASE("grid evaluation agrees with direct evaluation") {
  std::mt19937_64 rng(2024);
  const PolySeries f = random_poly(rng, 2, 3);
  std::vector<Complex> axis_nodes;
  for (int i = 0; i < 5; ++i) axis_nodes.push_back(crand(rng, 0.9));

  const std::vector<Complex> grid = eval_on_grid(f, axis_nodes);
  REQUIRE(grid.size() == 25);
  std::size_t flat = 0;
  for (int i0 = 0; i0 < 5; ++i0) {
    for (int i1 = 0; i1 < 5; ++i1) {
      const std::vector<Complex> z = {axis_nodes[static_cast<std::size_t>(i0)],
                                      axis_nodes[static_cast<std::size_t>(i1)]};
      CHECK(std::abs(grid[flat] - f.eval(z)) <=
            1e-12 * (1.0 + std::abs(grid[flat])));
      ++flat;
    }
  }
}

TEST_CASE("even hardy means are exact single-shot evaluations") {
  PolySeries f(1, {1});
  f.set_coeff(MultiIndex({0}), Complex(1.0, 0.0));
  f.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));

  const ValueEstimate m4 = hardy_norm_detailed(f, 4.0);
  CHECK(m4.converged);
  CHECK(m4.last_delta == 0.0);
  CHECK(std::pow(m4.value, 4) == doctest::Approx(6.0).epsilon(1e-13));

  const ValueEstimate m2 = hardy_norm_detailed(f, 2.0);
  CHECK(std::pow(m2.value, 2) == doctest::Approx(2.0).epsilon(1e-13));

  CHECK(hardy_norm_fixed(f, 4.0, m4.points_per_axis) ==
        doctest::Approx(m4.value).epsilon(1e-14));
}

TEST_CASE("odd means converge towards the closed form") {
  PolySeries f(1, {1});
  f.set_coeff(MultiIndex({0}), Complex(1.0, 0.0));
  f.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));
  // mean |1 + zeta| = 4 / pi; the kink at zeta = -1 slows the doubling
  // to polynomial order, so only 1e-8 is demanded here.
  const ValueEstimate m1 = hardy_norm_detailed(f, 1.0);
  CHECK(m1.value == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-8));

  ConvergencePolicy tight;
  tight.max_points_per_axis = 64;
  const ValueEstimate capped = hardy_norm_detailed(f, 1.0, tight);
  CHECK_FALSE(capped.converged);
  CHECK(capped.last_delta > 0.0);
}

TEST_CASE("parseval for the boundary 2-norm") {
  std::mt19937_64 rng(6007);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const PolySeries f = random_poly(rng, n, 3);
    double sum = 0.0;
    for (const auto& [alpha, c] : f.coeffs()) sum += std::norm(c);
    const double norm2 = hardy_norm(f, 2.0);
    CHECK(norm2 * norm2 == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("radial means increase with the radius") {
  std::mt19937_64 rng(13);
  const PolySeries f = random_poly(rng, 1, 4);
  for (const double p : {0.5, 1.0, 2.0}) {
    const double m_half = mp_at_radius(f, p, 0.5);
    const double m_nine = mp_at_radius(f, p, 0.9);
    const double m_one = hardy_norm(f, p);
    CHECK(m_half <= m_nine * (1.0 + 1e-12));
    CHECK(m_nine <= m_one * (1.0 + 1e-12));
  }
}

TEST_CASE("even exponent detection") {
  CHECK(is_even_integer_exponent(2.0));
  CHECK(is_even_integer_exponent(4.0));
  CHECK_FALSE(is_even_integer_exponent(1.0));
  CHECK_FALSE(is_even_integer_exponent(0.5));
  CHECK_FALSE(is_even_integer_exponent(3.0));
  CHECK_FALSE(is_even_integer_exponent(2.0000001));
}
