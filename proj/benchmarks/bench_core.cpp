// Microbenchmarks for the hot paths: kernel truncation, norm
// evaluation, quadrature, factorization, and the search loop.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "polyineq/extremal_search.hpp"
#include "polyineq/factorization.hpp"
#include "polyineq/kernels.hpp"
#include "polyineq/norms.hpp"
#include "polyineq/poly_series.hpp"
#include "polyineq/quadrature.hpp"

namespace {

using polyineq::Complex;
using polyineq::MultiIndex;
using polyineq::PolySeries;
using polyineq::WeightVector;

PolySeries dense_poly(int dim, int degree, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  PolySeries f(dim, std::vector<int>(static_cast<std::size_t>(dim), degree));
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (;;) {
    const double re = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
    const double im = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
    f.set_coeff(MultiIndex(idx), Complex(re, im));
    int axis = dim - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] > degree) {
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return f;
}

void BM_KernelSeries(benchmark::State& state) {
  const WeightVector q(2.0, 1);
  const std::vector<Complex> w = {
      Complex(static_cast<double>(state.range(0)) / 100.0, 0.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyineq::kernel_series(q, w, 1e-10));
  }
}
BENCHMARK(BM_KernelSeries)->Arg(50)->Arg(80)->Arg(95);

void BM_HqNormSeries(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const PolySeries f = dense_poly(2, degree, 11);
  const WeightVector q(2.5, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyineq::hq_norm_series(f, q));
  }
}
BENCHMARK(BM_HqNormSeries)->Arg(4)->Arg(8)->Arg(16);

void BM_DiscIntegrate(benchmark::State& state) {
  const int radial = static_cast<int>(state.range(0));
  const polyineq::DiscRule rule(1, 2.0, radial, 2 * radial + 1);
  const PolySeries f = dense_poly(1, 8, 7);
  for (auto _ : state) {
    const double value = rule.integrate(
        [&](std::span<const Complex> z) { return std::norm(f.eval(z)); });
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_DiscIntegrate)->Arg(8)->Arg(32)->Arg(128);

void BM_HardyNormOdd(benchmark::State& state) {
  const PolySeries f = dense_poly(1, 6, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyineq::hardy_norm(f, 1.0));
  }
}
BENCHMARK(BM_HardyNormOdd);

void BM_RieszFactorize(benchmark::State& state) {
  PolySeries f = PolySeries::constant(1, Complex(1.0, 0.0));
  const Complex roots[] = {Complex(0.4, 0.2), Complex(-0.3, 0.5),
                           Complex(0.1, -0.6), Complex(1.7, 0.4)};
  for (const Complex& a : roots) {
    PolySeries factor(1, {1});
    factor.set_coeff(MultiIndex({0}), -a);
    factor.set_coeff(MultiIndex({1}), Complex(1.0, 0.0));
    f = multiply(f, factor);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyineq::riesz_factorize(f, 2.0));
  }
}
BENCHMARK(BM_RieszFactorize);

void BM_MaximizeRatio(benchmark::State& state) {
  polyineq::SearchProblem problem;
  problem.id = polyineq::InequalityId::kCarleman;
  problem.n = 1;
  problem.m = 1;
  problem.p = {1.0};
  const polyineq::SearchSpace space =
      polyineq::SearchSpace::coefficient_ball(problem, 2);
  const long long budget = 60LL * space.parameter_count();
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyineq::maximize_ratio(space, budget, 5));
  }
}
BENCHMARK(BM_MaximizeRatio);

}  // namespace

BENCHMARK_MAIN();
