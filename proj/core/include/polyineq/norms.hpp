#ifndef POLYINEQ_NORMS_HPP_
#define POLYINEQ_NORMS_HPP_

#include <span>
#include <vector>

#include "polyineq/poly_series.hpp"
#include "polyineq/quadrature.hpp"
#include "polyineq/weight_vector.hpp"

namespace polyineq {

// Division guard shared by the relative quantities in this module.
inline constexpr double kEpsFloor = 1e-300;

struct NormReport {
  double series_value = 0.0;
  bool has_integral = false;
  double integral_value = 0.0;
  double relative_discrepancy = 0.0;
};

// Coefficient-space norm (sum_alpha (alpha! / (q)_alpha) |a_alpha|^2)^{1/2}.
// The weight ratio is accumulated incrementally, so no factorial
// overflows; a non-finite partial sum still raises NumericalError.
double hq_norm_series(const PolySeries& f, const WeightVector& q);

// Integral norm (int |f|^2 dnu)^{1/2} against the rule's measure; the
// rule fixes scalar q >= 1 (q = 1 is the boundary torus case). Vector
// weights without a constant value have no integral representation
// here, use hq_norm_series.
double hq_norm_integral(const PolySeries& f, const DiscRule& rule);

// Computes both representations at an exact auto-chosen resolution
// (or the provided one) and their relative discrepancy. Non-constant
// weight vectors get the series value only.
NormReport hq_norm_report(const PolySeries& f, const WeightVector& q,
                          int radial_points = 0, int angular_points = 0);

// U(z'') = ||f_{z''}||_p^p where the axes in kept_axes are frozen at
// z'' and the boundary norm runs over the remaining axes. All three
// norms (pointwise U, its torus mean over the kept axes, and the full
// boundary norm of f) use one shared per-axis resolution, so the
// Fubini identity pl1_norm == full_norm_pp holds at rounding level by
// construction and consistency_gap reports the difference.
class RestrictedNormFunction {
 public:
  RestrictedNormFunction(PolySeries f, double p, std::vector<int> kept_axes,
                         int boundary_points = 0);

  double operator()(std::span<const Complex> z_kept) const;
  double pl1_norm() const;
  double full_norm_pp() const;
  double consistency_gap() const;
  int boundary_points() const { return points_; }
  const std::vector<int>& kept_axes() const { return kept_; }

 private:
  PolySeries f_;
  double p_ = 0.0;
  std::vector<int> kept_;
  std::vector<int> rest_;
  int points_ = 0;
};

struct GrowthBound {
  double lhs = 0.0;  // |F(z)|^p
  double rhs = 0.0;  // ||F||_p^p / prod (1 - |z_j|^2)
  double ratio = 0.0;
  bool holds = false;
};

// Pointwise growth bound |F(z)|^p <= ||F||_p^p / prod_j (1 - |z_j|^2)
// at an interior point; holds is lhs <= rhs + tol.
GrowthBound growth_bound_check(const PolySeries& f, double p,
                               std::span<const Complex> z, double tol = 1e-10,
                               const ConvergencePolicy& policy = {});

}  // namespace polyineq

#endif  // POLYINEQ_NORMS_HPP_
