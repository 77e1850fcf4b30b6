#include "polyineq/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polyineq/errors.hpp"

namespace polyineq {

namespace {

// alpha! / (q)_alpha as an incremental product of i / (q + i - 1) per
// axis; stays O(alpha^{1-q}) instead of overflowing factorials.
double weight_ratio(const WeightVector& q, const MultiIndex& alpha) {
  double ratio = 1.0;
  for (int j = 0; j < alpha.dim(); ++j) {
    for (int i = 1; i <= alpha[j]; ++i) {
      ratio *= static_cast<double>(i) / (q[j] + static_cast<double>(i) - 1.0);
    }
  }
  return ratio;
}

// Weighted mean of |values|^p over the flat tensor grid, axis weights
// shared across axes, axis-major order.
double weighted_mean_abs_pow(const std::vector<Complex>& values,
                             const std::vector<double>& axis_weights, int dim,
                             double p) {
  const std::size_t g = axis_weights.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  const bool even = is_even_integer_exponent(p);
  const int half = even ? static_cast<int>(std::round(p / 2.0)) : 0;
  double sum = 0.0;
  for (const Complex& v : values) {
    double w = 1.0;
    for (int j = 0; j < dim; ++j) w *= axis_weights[idx[static_cast<std::size_t>(j)]];
    double term;
    if (even) {
      const double n2 = std::norm(v);
      term = 1.0;
      for (int i = 0; i < half; ++i) term *= n2;
    } else {
      term = std::pow(std::abs(v), p);
    }
    if (!std::isfinite(term)) {
      throw QuadratureError("norm integral: non-finite integrand value");
    }
    sum += w * term;
    int axis = dim - 1;
    while (axis >= 0) {
      auto au = static_cast<std::size_t>(axis);
      if (idx[au] + 1 < g) {
        ++idx[au];
        break;
      }
      idx[au] = 0;
      --axis;
    }
  }
  return sum;
}

}  // namespace

double hq_norm_series(const PolySeries& f, const WeightVector& q) {
  if (q.dim() != f.dim()) {
    throw DimensionError("hq_norm_series: weight dimension mismatch");
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : f.coeffs()) {
    sum += weight_ratio(q, alpha) * std::norm(c);
    if (!std::isfinite(sum)) {
      throw NumericalError("hq_norm_series: overflow in coefficient sum");
    }
  }
  return std::sqrt(sum);
}

double hq_norm_integral(const PolySeries& f, const DiscRule& rule) {
  if (rule.dim() != f.dim()) {
    throw DimensionError("hq_norm_integral: rule dimension mismatch");
  }
  const std::vector<Complex> values = eval_on_grid(f, rule.axis_nodes());
  const double integral =
      weighted_mean_abs_pow(values, rule.axis_weights(), f.dim(), 2.0);
  return std::sqrt(integral);
}

NormReport hq_norm_report(const PolySeries& f, const WeightVector& q,
                          int radial_points, int angular_points) {
  NormReport report;
  report.series_value = hq_norm_series(f, q);
  if (!q.is_scalar() || !(q[0] >= 1.0)) return report;

  int max_degree = 0;
  for (int d : f.max_degree()) max_degree = std::max(max_degree, d);
  // |f|^2 has radial degree <= D in t per axis and angular frequencies
  // in [-D, D]; these choices make the rule exact.
  const int radial = radial_points > 0 ? radial_points : max_degree / 2 + 1;
  const int angular = angular_points > 0 ? angular_points : 2 * max_degree + 1;

  const DiscRule rule(f.dim(), q[0], radial, angular);
  report.has_integral = true;
  report.integral_value = hq_norm_integral(f, rule);
  report.relative_discrepancy =
      std::abs(report.series_value - report.integral_value) /
      std::max(report.series_value, kEpsFloor);
  return report;
}

RestrictedNormFunction::RestrictedNormFunction(PolySeries f, double p,
                                               std::vector<int> kept_axes,
                                               int boundary_points)
    : f_(std::move(f)), p_(p), kept_(std::move(kept_axes)) {
  if (!(p_ > 0.0) || !std::isfinite(p_)) {
    throw DomainError("RestrictedNormFunction: p must be positive");
  }
  std::sort(kept_.begin(), kept_.end());
  if (kept_.empty() ||
      static_cast<int>(kept_.size()) >= f_.dim() ||
      std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end() ||
      kept_.front() < 0 || kept_.back() >= f_.dim()) {
    throw DomainError(
        "RestrictedNormFunction: kept_axes must be a proper non-empty subset");
  }
  for (int j = 0; j < f_.dim(); ++j) {
    if (!std::binary_search(kept_.begin(), kept_.end(), j)) rest_.push_back(j);
  }
  int max_degree = 0;
  for (int d : f_.max_degree()) max_degree = std::max(max_degree, d);
  points_ = boundary_points > 0 ? boundary_points
                                : std::max(64, 2 * max_degree + 1);
}

double RestrictedNormFunction::operator()(std::span<const Complex> z_kept) const {
  if (z_kept.size() != kept_.size()) {
    throw DimensionError("RestrictedNormFunction: kept point dimension mismatch");
  }
  // Partial evaluation: collapse the kept axes into the coefficients of
  // the remaining ones.
  std::vector<int> rest_degree;
  for (int j : rest_) {
    rest_degree.push_back(f_.max_degree()[static_cast<std::size_t>(j)]);
  }
  PolySeries g(static_cast<int>(rest_.size()), rest_degree);
  std::map<MultiIndex, Complex> acc;
  std::vector<int> rest_alpha(rest_.size());
  for (const auto& [alpha, c] : f_.coeffs()) {
    Complex scale = c;
    for (std::size_t i = 0; i < kept_.size(); ++i) {
      const int e = alpha[kept_[i]];
      for (int k = 0; k < e; ++k) scale *= z_kept[i];
    }
    for (std::size_t i = 0; i < rest_.size(); ++i) {
      rest_alpha[i] = alpha[rest_[i]];
    }
    acc[MultiIndex(rest_alpha)] += scale;
  }
  for (const auto& [alpha, c] : acc) g.set_coeff(alpha, c);

  const TorusRule rule(static_cast<int>(rest_.size()), points_);
  const std::vector<Complex> values = eval_on_grid(g, rule.axis_nodes());
  return weighted_mean_abs_pow(values, rule.axis_weights(), g.dim(), p_);
}

double RestrictedNormFunction::pl1_norm() const {
  const TorusRule rule(static_cast<int>(kept_.size()), points_);
  std::vector<std::size_t> idx(kept_.size(), 0);
  std::vector<Complex> z(kept_.size());
  const std::size_t g = rule.axis_nodes().size();
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < kept_.size(); ++j) {
      z[j] = rule.axis_nodes()[idx[j]];
      w *= rule.axis_weights()[idx[j]];
    }
    sum += w * (*this)(std::span<const Complex>(z.data(), z.size()));
    int axis = static_cast<int>(kept_.size()) - 1;
    while (axis >= 0) {
      auto au = static_cast<std::size_t>(axis);
      if (idx[au] + 1 < g) {
        ++idx[au];
        break;
      }
      idx[au] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return sum;
}

double RestrictedNormFunction::full_norm_pp() const {
  const TorusRule rule(f_.dim(), points_);
  const std::vector<Complex> values = eval_on_grid(f_, rule.axis_nodes());
  return weighted_mean_abs_pow(values, rule.axis_weights(), f_.dim(), p_);
}

double RestrictedNormFunction::consistency_gap() const {
  return std::abs(pl1_norm() - full_norm_pp());
}

GrowthBound growth_bound_check(const PolySeries& f, double p,
                               std::span<const Complex> z, double tol,
                               const ConvergencePolicy& policy) {
  if (static_cast<int>(z.size()) != f.dim()) {
    throw DimensionError("growth_bound_check: point dimension mismatch");
  }
  double denom = 1.0;
  for (const Complex& zj : z) {
    if (!(std::abs(zj) < 1.0)) {
      throw DomainError("growth_bound_check: point must lie in the open polydisc");
    }
    denom *= 1.0 - std::norm(zj);
  }
  GrowthBound out;
  out.lhs = std::pow(std::abs(f.eval(z)), p);
  const double norm = hardy_norm(f, p, policy);
  out.rhs = std::pow(norm, p) / denom;
  out.ratio = out.lhs / std::max(out.rhs, kEpsFloor);
  out.holds = out.lhs <= out.rhs + tol;
  return out;
}

}  // namespace polyineq
