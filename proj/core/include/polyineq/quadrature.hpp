#ifndef POLYINEQ_QUADRATURE_HPP_
#define POLYINEQ_QUADRATURE_HPP_

#include <cmath>
#include <complex>
#include <span>
#include <type_traits>
#include <vector>

#include "polyineq/errors.hpp"
#include "polyineq/poly_series.hpp"

namespace polyineq {

// Radial rule on [0,1] in the variable t = r^2 against the probability
// measure (q-1)(1-t)^{q-2} dt. Exact for polynomials in t up to degree
// 2*points - 1; weights sum to 1.
struct RadialRule {
  std::vector<double> t;
  std::vector<double> weight;
};

// Gauss rule for the shifted Jacobi weight above, built by the
// Golub-Welsch eigenvalue method. Requires q > 1 and points >= 1.
RadialRule gauss_jacobi_radial(double q, int points);

namespace detail {

// Axis-major tensor walk shared by the product rules: axis 0 is the
// slowest index, the last axis the fastest, matching the deterministic
// accumulation order promised by the module.
template <class F>
auto tensor_integrate(int dim, const std::vector<Complex>& axis_nodes,
                      const std::vector<double>& axis_weights, F&& f) {
  using R = std::invoke_result_t<F, std::span<const Complex>>;
  const std::size_t g = axis_nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<Complex> z(static_cast<std::size_t>(dim));
  R sum{};
  while (true) {
    double w = 1.0;
    for (int j = 0; j < dim; ++j) {
      const std::size_t i = idx[static_cast<std::size_t>(j)];
      z[static_cast<std::size_t>(j)] = axis_nodes[i];
      w *= axis_weights[i];
    }
    const R value = f(std::span<const Complex>(z.data(), z.size()));
    if (!std::isfinite(std::abs(value))) {
      throw QuadratureError("integrate: non-finite integrand value at a node");
    }
    sum += w * value;
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
    if (axis < 0) break;
  }
  return sum;
}

}  // namespace detail

// Uniform tensor grid on the n-torus: per axis the N-th roots of unity
// with weight 1/N. Exact for monomials zeta^alpha conj(zeta)^beta as
// long as max_j (alpha_j + beta_j) < N.
class TorusRule {
 public:
  TorusRule(int dim, int points_per_axis);

  int dim() const { return dim_; }
  int points_per_axis() const { return points_; }
  const std::vector<Complex>& axis_nodes() const { return nodes_; }
  const std::vector<double>& axis_weights() const { return weights_; }

  template <class F>
  auto integrate(F&& f) const {
    return detail::tensor_integrate(dim_, nodes_, weights_, std::forward<F>(f));
  }

 private:
  int dim_ = 0;
  int points_ = 0;
  std::vector<Complex> nodes_;
  std::vector<double> weights_;
};

// Product rule for the normalized weighted area measure on the unit
// polydisc, the same scalar q >= 1 on every axis. For q > 1 the axis
// nodes are sqrt(t_i) zeta_k with Gauss-Jacobi radii and uniform
// angles; q = 1 degenerates to the boundary torus rule, matching the
// weak-* limit of the measures.
class DiscRule {
 public:
  DiscRule(int dim, double q, int radial_points, int angular_points);

  int dim() const { return dim_; }
  double q() const { return q_; }
  bool boundary_mode() const { return q_ == 1.0; }
  int radial_points() const { return radial_; }
  int angular_points() const { return angular_; }
  const RadialRule& radial_rule() const { return radial_rule_; }
  const std::vector<Complex>& axis_nodes() const { return nodes_; }
  const std::vector<double>& axis_weights() const { return weights_; }

  template <class F>
  auto integrate(F&& f) const {
    return detail::tensor_integrate(dim_, nodes_, weights_, std::forward<F>(f));
  }

 private:
  int dim_ = 0;
  double q_ = 0.0;
  int radial_ = 0;
  int angular_ = 0;
  RadialRule radial_rule_;
  std::vector<Complex> nodes_;
  std::vector<double> weights_;
};

// Values of f at every tensor grid point built from one shared axis
// node list, flattened axis-major (axis 0 slowest). Contracts one axis
// at a time, so the cost is a sum of axis sweeps instead of
// terms * nodes.
std::vector<Complex> eval_on_grid(const PolySeries& f,
                                  const std::vector<Complex>& axis_nodes);

// Stopping control for integrands without an exactness degree (|f|^p
// with non-even p): resolution doubles until the relative change drops
// below rel_tol or a cap is hit, in which case converged = false.
struct ConvergencePolicy {
  int initial_points = 16;
  int max_points_per_axis = 1 << 15;
  long long node_budget = 1 << 21;
  double rel_tol = 1e-10;
};

struct ValueEstimate {
  double value = 0.0;
  bool converged = true;
  double last_delta = 0.0;
  int points_per_axis = 0;
};

// Boundary p-mean M_p(f, 1) = (int_{T^n} |f|^p dm_n)^{1/p}. Even
// integer p is evaluated exactly with N > max(2, p/2) * max_degree;
// other p follow the doubling policy.
ValueEstimate hardy_norm_detailed(const PolySeries& f, double p,
                                  const ConvergencePolicy& policy = {});
double hardy_norm(const PolySeries& f, double p,
                  const ConvergencePolicy& policy = {});

// Boundary p-mean at one fixed resolution, no adaptivity. Exposed so
// two functions that agree in modulus on the boundary can be compared
// on the identical grid.
double hardy_norm_fixed(const PolySeries& f, double p, int points_per_axis);

// M_p(f, r) for 0 <= r <= 1, the boundary mean of the dilate f_r.
ValueEstimate mp_at_radius_detailed(const PolySeries& f, double p, double r,
                                    const ConvergencePolicy& policy = {});
double mp_at_radius(const PolySeries& f, double p, double r,
                    const ConvergencePolicy& policy = {});

bool is_even_integer_exponent(double p);

}  // namespace polyineq

#endif  // POLYINEQ_QUADRATURE_HPP_
