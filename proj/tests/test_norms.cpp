#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "polyineq/errors.hpp"
#include "polyineq/kernels.hpp"
#include "polyineq/norms.hpp"
#include "test_util.hpp"

using namespace polyineq;
using polyineq::testing::crand;
using polyineq::testing::random_poly;
using polyineq::testing::urand;

namespace {

// <f, g>_q = sum_alpha (alpha!/(q)_alpha) a_alpha conj(b_alpha),
// accumulated as an incremental ratio so large degrees cannot overflow.
Complex weighted_inner(const PolySeries& f, const PolySeries& g,
                       const WeightVector& q) {
  Complex sum(0.0, 0.0);
  for (const auto& [alpha, a] : f.coeffs()) {
    double weight = 1.0;
    for (int j = 0; j < alpha.dim(); ++j) {
      for (int t = 1; t <= alpha[j]; ++t) weight *= t / (q[j] + t - 1.0);
    }
    sum += weight * a * std::conj(g.coeff(alpha));
  }
  return sum;
}

}  // namespace

TEST_CASE("series norm closed forms") {
  PolySeries z2(1, {2});
  z2.set_coeff(MultiIndex({2}), Complex(1.0, 0.0));
  CHECK(hq_norm_series(z2, WeightVector(2.0, 1)) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

  PolySeries f(1, {1});
  f.set_coeff(MultiIndex({0}), Complex(1.0, 0.0));
  f.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));
  CHECK(hq_norm_series(f, WeightVector(1.0, 1)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("series and integral representations agree") {
  std::mt19937_64 rng(24601);
  for (const double q : {1.0, 2.0, 3.0}) {
    for (const int n : {1, 2}) {
      for (int trial = 0; trial < 5; ++trial) {
        const PolySeries f = random_poly(rng, n, 4);
        const NormReport rep = hq_norm_report(f, WeightVector(q, n));
        REQUIRE(rep.has_integral);
        CHECK(rep.relative_discrepancy < 1e-12);
      }
    }
  }
}

TEST_CASE("non-scalar weights have no integral representation") {
  std::mt19937_64 rng(31);
  const PolySeries f = random_poly(rng, 2, 2);
  const NormReport rep = hq_norm_report(f, WeightVector(std::vector<double>{1.0, 2.0}));
  CHECK_FALSE(rep.has_integral);
  CHECK(rep.series_value > 0.0);
}

TEST_CASE("kernel reproduces point evaluation against the weighted product") {
  std::mt19937_64 rng(717);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    std::vector<double> weights;
    for (int j = 0; j < n; ++j) weights.push_back(0.5 + 2.5 * urand(rng));
    const WeightVector q(weights);
    const PolySeries f = random_poly(rng, n, 3);
    const auto w = polyineq::testing::random_interior(rng, n, 0.6);

    const PolySeries k = kernel_series(q, w, 1e-12);
    const Complex got = weighted_inner(f, k, q);
    const Complex expect = f.eval(w);
    CHECK(std::abs(got - expect) <= 1e-10 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("normalized kernel has unit norm up to the truncation tail") {
  const std::vector<Complex> w = {Complex(0.5, 0.2)};
  const WeightVector q(2.5, 1);
  const PolySeries k_hat = extremal_hilbert(q, w, 1e-8);
  CHECK(hq_norm_series(k_hat, q) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("restricted norm function satisfies the shared-grid identity") {
  std::mt19937_64 rng(998);
  for (const double p : {1.0, 2.0}) {
    const PolySeries f = random_poly(rng, 2, 3);
    const RestrictedNormFunction u(f, p, {1});
    const double scale = std::max(u.full_norm_pp(), 1e-300);
    CHECK(u.consistency_gap() / scale < 1e-10);
  }
}

TEST_CASE("restricted norm matches the explicit slice norm for p = 2") {
  std::mt19937_64 rng(87);
  const PolySeries f = random_poly(rng, 2, 3);
  const RestrictedNormFunction u(f, 2.0, {1});
  for (int trial = 0; trial < 10; ++trial) {
    const Complex w = crand(rng, 0.9);

    // U(w) = sum_k |c_k(w)|^2 with c_k(w) = sum_l a_{k,l} w^l.
    double expect = 0.0;
    for (int k = 0; k <= 3; ++k) {
      Complex ck(0.0, 0.0);
      for (int l = 0; l <= 3; ++l) {
        Complex term = f.coeff(MultiIndex({k, l}));
        for (int t = 0; t < l; ++t) term *= w;
        ck += term;
      }
      expect += std::norm(ck);
    }
    const std::vector<Complex> wv = {w};
    CHECK(u(wv) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("growth bound holds for random functions and points") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const PolySeries f = random_poly(rng, n, 4);
    const auto z = polyineq::testing::random_interior(rng, n, 0.9);
    const double p = (trial % 2 == 0) ? 2.0 : 1.0;
    const GrowthBound gb = growth_bound_check(f, p, z);
    CHECK(gb.holds);
    CHECK(gb.lhs <= gb.rhs * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("growth bound is nearly attained by the kernel power") {
  for (const double p : {0.5, 1.0, 2.0, 4.0}) {
    const std::vector<Complex> z = {Complex(0.45, -0.25)};
    const PolySeries f = extremal_hardy_power(p, 1, z, 1e-9);
    const GrowthBound gb = growth_bound_check(f, p, z);
    CHECK(gb.holds);
    CHECK(gb.ratio > 1.0 - 1e-4);
  }
}
