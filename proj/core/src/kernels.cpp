#include "polyineq/kernels.hpp"

#include <cmath>
#include <vector>

#include "polyineq/errors.hpp"

namespace polyineq {

namespace {

void check_interior(std::span<const Complex> w, int dim, const char* who) {
  if (static_cast<int>(w.size()) != dim) {
    throw DimensionError(std::string(who) + ": point dimension mismatch");
  }
  for (const Complex& wj : w) {
    if (!(std::abs(wj) < 1.0)) {
      throw DomainError(std::string(who) + ": point must lie in the open polydisc");
    }
  }
}

// One-dimensional expansion of (1 - z conj(w))^{-q}. Term moduli obey
// t_{k+1} = t_k (q+k)/(k+1) |w|; the ratio is monotone in k (decreasing
// for q >= 1, increasing toward |w| for q < 1), so with
// rho = max(|w|, r_{D+1}) every post-tail ratio is <= rho and
//   sum_{k>D} t_k <= t_D r_D / (1 - rho).
// Picks the smallest D >= min_degree with that bound below target.
struct AxisExpansion {
  std::vector<Complex> coeff;  // ((q)_k / k!) conj(w)^k, k = 0..D
  double tail = 0.0;
};

AxisExpansion expand_axis(double q, Complex w, double target, int min_degree,
                          int hard_cap) {
  const double absw = std::abs(w);
  const Complex cw = std::conj(w);

  AxisExpansion out;
  if (absw == 0.0) {
    out.coeff.assign(static_cast<std::size_t>(min_degree) + 1, Complex(0.0, 0.0));
    out.coeff[0] = Complex(1.0, 0.0);
    return out;
  }

  double t = 1.0;  // t_D during the scan
  for (int d = 0; d <= hard_cap; ++d) {
    const double r_d = (q + d) / (d + 1.0) * absw;
    const double r_d1 = (q + d + 1.0) / (d + 2.0) * absw;
    const double rho = std::max(absw, r_d1);
    if (d >= min_degree && rho < 1.0) {
      const double bound = t * r_d / (1.0 - rho);
      if (bound < target) {
        out.tail = bound;
        out.coeff.resize(static_cast<std::size_t>(d) + 1);
        Complex c(1.0, 0.0);
        out.coeff[0] = c;
        for (int k = 0; k < d; ++k) {
          c *= (q + k) / (k + 1.0) * cw;
          out.coeff[static_cast<std::size_t>(k) + 1] = c;
        }
        return out;
      }
    }
    t *= r_d;
  }
  throw NumericalError("kernel_series: tail tolerance unreachable within degree cap");
}

}  // namespace

PolySeries kernel_series(const WeightVector& q, std::span<const Complex> w,
                         double tol, const KernelTruncation& trunc) {
  const int n = q.dim();
  check_interior(w, n, "kernel_series");
  if (!(tol > 0.0)) throw DomainError("kernel_series: tol must be positive");
  if (!trunc.min_degree.empty() &&
      static_cast<int>(trunc.min_degree.size()) != n) {
    throw DimensionError("kernel_series: min_degree dimension mismatch");
  }

  // Full one-axis coefficient mass M_j = (1 - |w_j|)^{-q_j}. The product
  // truncation error telescopes across axes as
  //   sum_j tail_j prod_{l != j} M_l,
  // so each axis aims at tol / (n prod_{l != j} M_l).
  std::vector<double> mass(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    mass[static_cast<std::size_t>(j)] =
        std::pow(1.0 - std::abs(w[static_cast<std::size_t>(j)]), -q[j]);
  }

  std::vector<AxisExpansion> axes;
  axes.reserve(static_cast<std::size_t>(n));
  double total_tail = 0.0;
  for (int j = 0; j < n; ++j) {
    double cross = 1.0;
    for (int l = 0; l < n; ++l) {
      if (l != j) cross *= mass[static_cast<std::size_t>(l)];
    }
    const double target = tol / (n * cross);
    const int min_degree =
        trunc.min_degree.empty() ? 0 : trunc.min_degree[static_cast<std::size_t>(j)];
    axes.push_back(expand_axis(q[j], w[static_cast<std::size_t>(j)], target,
                               min_degree, trunc.hard_cap));
    total_tail += axes.back().tail * cross;
  }

  std::vector<int> degree(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    degree[static_cast<std::size_t>(j)] =
        static_cast<int>(axes[static_cast<std::size_t>(j)].coeff.size()) - 1;
  }
  PolySeries out(n, degree);

  // Odometer walk over the coefficient box; the map reorders entries
  // lexicographically regardless of fill order.
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Complex c(1.0, 0.0);
    for (int j = 0; j < n; ++j) {
      c *= axes[static_cast<std::size_t>(j)].coeff[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    }
    out.set_coeff(MultiIndex(idx), c);
    int axis = n - 1;
    while (axis >= 0) {
      auto au = static_cast<std::size_t>(axis);
      if (idx[au] < degree[au]) {
        ++idx[au];
        break;
      }
      idx[au] = 0;
      --axis;
    }
    if (axis < 0) break;
  }

  out.set_tail_bound(total_tail);
  return out;
}

Complex kernel_eval(const WeightVector& q, std::span<const Complex> z,
                    std::span<const Complex> w) {
  const int n = q.dim();
  check_interior(z, n, "kernel_eval");
  check_interior(w, n, "kernel_eval");
  Complex value(1.0, 0.0);
  for (int j = 0; j < n; ++j) {
    const Complex base = Complex(1.0, 0.0) -
                         z[static_cast<std::size_t>(j)] * std::conj(w[static_cast<std::size_t>(j)]);
    value *= std::pow(base, -q[j]);
  }
  return value;
}

PolySeries extremal_hilbert(const WeightVector& q, std::span<const Complex> w,
                            double tol, const KernelTruncation& trunc) {
  PolySeries f = kernel_series(q, w, tol, trunc);
  double scale = 1.0;
  for (int j = 0; j < q.dim(); ++j) {
    scale *= std::pow(1.0 - std::norm(w[static_cast<std::size_t>(j)]), q[j] / 2.0);
  }
  f *= Complex(scale, 0.0);
  return f;
}

PolySeries extremal_hardy_power(double p, int dim, std::span<const Complex> w,
                                double tol, const KernelTruncation& trunc) {
  if (!(p > 0.0)) throw DomainError("extremal_hardy_power: p must be positive");
  return kernel_series(WeightVector(2.0 / p, dim), w, tol, trunc);
}

}  // namespace polyineq
