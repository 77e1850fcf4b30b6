#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "polyineq/errors.hpp"
#include "polyineq/kernels.hpp"
#include "polyineq/poly_series.hpp"
#include "polyineq/weight_vector.hpp"
#include "test_util.hpp"

using namespace polyineq;
using polyineq::testing::crand;
using polyineq::testing::random_poly;
using polyineq::testing::urand;

TEST_CASE("multi index ordering and degree") {
  const MultiIndex a({1, 2});
  const MultiIndex b({1, 3});
  const MultiIndex c({2, 0});
  CHECK(a < b);
  CHECK(b < c);
  CHECK(a.total_degree() == 3);
  CHECK(c.total_degree() == 2);
  CHECK_THROWS_AS(MultiIndex({1, -1}), DomainError);
}

TEST_CASE("pochhammer values and recurrence") {
  CHECK(pochhammer(2.5, 0) == doctest::Approx(1.0));
  CHECK(pochhammer(2.0, 3) == doctest::Approx(24.0));  // 2*3*4
  CHECK(pochhammer(1.0, 5) == doctest::Approx(120.0));

  std::mt19937_64 rng(85251);
  for (int trial = 0; trial < 50; ++trial) {
    const double q = 0.1 + 5.0 * urand(rng);
    const int k = static_cast<int>(rng() % 12);
    CHECK(pochhammer(q, k + 1) ==
          doctest::Approx(pochhammer(q, k) * (q + k)).epsilon(1e-14));
  }

  const WeightVector q(std::vector<double>{2.0, 3.0});
  const MultiIndex alpha({2, 1});
  CHECK(pochhammer(q, alpha) == doctest::Approx(2.0 * 3.0 * 3.0));
  CHECK_THROWS_AS(pochhammer(-1.0, 2), DomainError);
}

TEST_CASE("weight vector invariants") {
  const WeightVector q(2.0, 3);
  CHECK(q.dim() == 3);
  CHECK(q.is_scalar());
  const WeightVector r({1.0, 2.0, 3.0});
  CHECK_FALSE(r.is_scalar());
  const WeightVector s = q + r;
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[2] == doctest::Approx(5.0));
  CHECK_THROWS_AS(WeightVector(std::vector<double>{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(WeightVector(1.0, 2) + WeightVector(1.0, 3), DimensionError);
}

TEST_CASE("poly series storage honors the cap and erases zeros") {
  PolySeries f(2, {3, 2});
  f.set_coeff(MultiIndex({1, 1}), Complex(2.0, -1.0));
  CHECK(f.coeff(MultiIndex({1, 1})) == Complex(2.0, -1.0));
  CHECK(f.coeff(MultiIndex({0, 0})) == Complex(0.0, 0.0));
  f.set_coeff(MultiIndex({1, 1}), Complex(0.0, 0.0));
  CHECK(f.is_zero());
  CHECK_THROWS_AS(f.set_coeff(MultiIndex({4, 0}), Complex(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(f.coeff(MultiIndex({1})), DimensionError);
}

TEST_CASE("evaluation matches the direct monomial sum") {
  std::mt19937_64 rng(411);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const PolySeries f = random_poly(rng, n, 3);
    const std::vector<Complex> z = polyineq::testing::random_interior(rng, n, 0.9);

    Complex direct(0.0, 0.0);
    for (const auto& [alpha, c] : f.coeffs()) {
      Complex term = c;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < alpha[j]; ++k) term *= z[static_cast<std::size_t>(j)];
      }
      direct += term;
    }
    CHECK(std::abs(f.eval(z) - direct) <= 1e-13 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("dilate scales coefficients by r^degree") {
  PolySeries f(1, {2});
  f.set_coeff(MultiIndex({0}), Complex(1.0, 0.0));
  f.set_coeff(MultiIndex({2}), Complex(4.0, 0.0));
  const PolySeries g = f.dilate(0.5);
  CHECK(g.coeff(MultiIndex({0})) == Complex(1.0, 0.0));
  CHECK(std::abs(g.coeff(MultiIndex({2})) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("multiply is commutative and associative at rounding level") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const PolySeries a = random_poly(rng, 2, 2);
    const PolySeries b = random_poly(rng, 2, 2);
    const PolySeries c = random_poly(rng, 2, 1);

    const PolySeries ab = multiply(a, b);
    const PolySeries ba = multiply(b, a);
    for (const auto& [alpha, v] : ab.coeffs()) {
      CHECK(std::abs(v - ba.coeff(alpha)) <= 1e-13 * (1.0 + std::abs(v)));
    }

    const PolySeries left = multiply(ab, c);
    const PolySeries right = multiply(a, multiply(b, c));
    for (const auto& [alpha, v] : left.coeffs()) {
      CHECK(std::abs(v - right.coeff(alpha)) <= 1e-12 * (1.0 + std::abs(v)));
    }
  }
}

TEST_CASE("difference of squares") {
  PolySeries plus(1, {1});
  plus.set_coeff(MultiIndex({0}), Complex(1.0, 0.0));
  plus.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));
  PolySeries minus(1, {1});
  minus.set_coeff(MultiIndex({0}), Complex(1.0, 0.0));
  minus.set_coeff(MultiIndex({1}), Complex(-1.0, 0.0));
  const PolySeries prod = multiply(plus, minus);
  CHECK(prod.coeff(MultiIndex({0})) == Complex(1.0, 0.0));
  CHECK(prod.coeff(MultiIndex({1})) == Complex(0.0, 0.0));
  CHECK(prod.coeff(MultiIndex({2})) == Complex(-1.0, 0.0));
}

TEST_CASE("capped multiply moves dropped mass into the tail bound") {
  std::mt19937_64 rng(777);
  const PolySeries a = random_poly(rng, 1, 4);
  const PolySeries b = random_poly(rng, 1, 4);
  const PolySeries full = multiply(a, b);
  const PolySeries capped = multiply(a, b, {3});

  double dropped = 0.0;
  for (const auto& [alpha, v] : full.coeffs()) {
    if (alpha[0] > 3) dropped += std::abs(v);
  }
  CHECK(capped.tail_bound() >= dropped * (1.0 - 1e-12));
  for (const auto& [alpha, v] : capped.coeffs()) {
    CHECK(alpha[0] <= 3);
    CHECK(std::abs(v - full.coeff(alpha)) <= 1e-13 * (1.0 + std::abs(v)));
  }
}

TEST_CASE("derivative differentiates coefficientwise") {
  PolySeries f(1, {2});
  f.set_coeff(MultiIndex({0}), Complex(1.0, 0.0));
  f.set_coeff(MultiIndex({1}), Complex(2.0, 0.0));
  f.set_coeff(MultiIndex({2}), Complex(3.0, 0.0));
  const PolySeries g = derivative(f, 0);
  CHECK(g.coeff(MultiIndex({0})) == Complex(2.0, 0.0));
  CHECK(g.coeff(MultiIndex({1})) == Complex(6.0, 0.0));
  CHECK(g.max_degree()[0] == 1);

  PolySeries h(2, {1, 1});
  h.set_coeff(MultiIndex({1, 1}), Complex(1.0, 0.0));
  const PolySeries hz2 = derivative(h, 1);
  CHECK(hz2.coeff(MultiIndex({1, 0})) == Complex(1.0, 0.0));

  CHECK_THROWS_AS(derivative(f, 1), DimensionError);
  PolySeries t(1, {1});
  t.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));
  t.set_tail_bound(0.5);
  CHECK_THROWS_AS(derivative(t, 0), DomainError);
}

TEST_CASE("kernel series coefficients follow the pochhammer formula") {
  const WeightVector q(std::vector<double>{2.0, 3.0});
  const std::vector<Complex> w = {Complex(0.3, 0.2), Complex(0.0, -0.4)};
  const PolySeries k = kernel_series(q, w, 1e-10);

  std::vector<std::vector<int>> probes = {{0, 0}, {1, 0}, {0, 2}, {2, 1}, {3, 3}};
  for (const auto& entries : probes) {
    const MultiIndex alpha(entries);
    Complex expect(1.0, 0.0);
    double fact = 1.0;
    for (int j = 0; j < 2; ++j) {
      Complex wj = std::conj(w[static_cast<std::size_t>(j)]);
      for (int t = 0; t < alpha[j]; ++t) expect *= wj;
      for (int t = 2; t <= alpha[j]; ++t) fact *= t;
    }
    expect *= pochhammer(q, alpha) / fact;
    CHECK(std::abs(k.coeff(alpha) - expect) <= 1e-14 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("kernel series matches the closed form inside the polydisc") {
  std::mt19937_64 rng(9001);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    std::vector<double> weights;
    for (int j = 0; j < n; ++j) weights.push_back(0.5 + 3.0 * urand(rng));
    const WeightVector q(weights);
    const auto w = polyineq::testing::random_interior(rng, n, 0.7);
    const auto z = polyineq::testing::random_interior(rng, n, 0.95);

    const PolySeries k = kernel_series(q, w, 1e-9);
    const Complex direct = kernel_eval(q, z, w);
    CHECK(std::abs(k.eval(z) - direct) <= k.tail_bound() + 1e-11 * std::abs(direct));
  }
}

TEST_CASE("kernel tail bound dominates the dropped part near the boundary") {
  const WeightVector q(3.0, 1);
  const std::vector<Complex> w = {Complex(0.7, 0.1)};
  const PolySeries k = kernel_series(q, w, 1e-6);
  REQUIRE(k.tail_bound() <= 1e-6);
  for (int i = 0; i < 64; ++i) {
    const Complex z = 0.999 * polyineq::testing::circle_point(i / 64.0);
    const std::vector<Complex> zv = {z};
    const double err = std::abs(kernel_eval(q, zv, w) - k.eval(zv));
    CHECK(err <= k.tail_bound() * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("kernel truncation respects min_degree and the hard cap") {
  const WeightVector q(1.0, 1);
  const std::vector<Complex> w = {Complex(0.5, 0.0)};
  KernelTruncation trunc;
  trunc.min_degree = {12};
  const PolySeries k = kernel_series(q, w, 1e-4, trunc);
  CHECK(k.max_degree()[0] >= 12);

  KernelTruncation tiny;
  tiny.hard_cap = 2;
  const std::vector<Complex> far = {Complex(0.99, 0.0)};
  CHECK_THROWS_AS(kernel_series(q, far, 1e-12, tiny), NumericalError);
}

TEST_CASE("hardy power extremal reduces to the squared kernel at p = 1") {
  const std::vector<Complex> w = {Complex(0.4, -0.3)};
  const PolySeries direct =
      kernel_series(WeightVector(2.0, 1), w, 1e-10);
  const PolySeries powered = extremal_hardy_power(1.0, 1, w, 1e-10);
  for (const auto& [alpha, v] : direct.coeffs()) {
    CHECK(std::abs(v - powered.coeff(alpha)) <= 1e-10 * (1.0 + std::abs(v)));
  }
}
