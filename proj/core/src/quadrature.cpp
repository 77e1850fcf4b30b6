#include "polyineq/quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polyineq {

namespace {

std::vector<Complex> roots_of_unity(int n) {
  std::vector<Complex> nodes(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    nodes[static_cast<std::size_t>(k)] = Complex(std::cos(theta), std::sin(theta));
  }
  return nodes;
}

long long int_pow_checked(int base, int exp, long long limit) {
  long long value = 1;
  for (int i = 0; i < exp; ++i) {
    value *= base;
    if (value > limit) return limit + 1;
  }
  return value;
}

}  // namespace

RadialRule gauss_jacobi_radial(double q, int points) {
  if (!(q > 1.0)) throw DomainError("gauss_jacobi_radial: requires q > 1");
  if (points < 1) throw DomainError("gauss_jacobi_radial: requires points >= 1");

  // Monic Jacobi recurrence for the weight (1-x)^{q-2} on [-1,1]
  // (Gautschi's coefficients with alpha = q-2, beta = 0), mapped to
  // t = (x+1)/2. The measure here is normalized to total mass one, so
  // the Golub-Welsch weights are the squared first eigenvector entries.
  const int r = points;
  Eigen::VectorXd diag(r), sub(r > 1 ? r - 1 : 0);
  const double alpha = q - 2.0;
  diag(0) = ((2.0 - q) / q + 1.0) / 2.0;
  for (int k = 1; k < r; ++k) {
    const double a_k = -(alpha * alpha) / ((2.0 * k + q - 2.0) * (2.0 * k + q));
    diag(k) = (a_k + 1.0) / 2.0;
  }
  for (int k = 1; k < r; ++k) {
    double b_k;
    if (k == 1) {
      b_k = 4.0 * (q - 1.0) / (q * q * (q + 1.0));
    } else {
      const double kk = static_cast<double>(k);
      const double num = 4.0 * kk * kk * (kk + q - 2.0) * (kk + q - 2.0);
      const double den = (2.0 * kk + q - 2.0) * (2.0 * kk + q - 2.0) *
                         (2.0 * kk + q - 1.0) * (2.0 * kk + q - 3.0);
      b_k = num / den;
    }
    sub(k - 1) = std::sqrt(b_k / 4.0);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("gauss_jacobi_radial: eigen decomposition failed");
  }

  RadialRule rule;
  rule.t.resize(static_cast<std::size_t>(r));
  rule.weight.resize(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    rule.t[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weight[static_cast<std::size_t>(i)] = v0 * v0;
  }
  return rule;
}

TorusRule::TorusRule(int dim, int points_per_axis)
    : dim_(dim), points_(points_per_axis) {
  if (dim_ < 1) throw DomainError("TorusRule: dimension must be >= 1");
  if (points_ < 1) throw DomainError("TorusRule: points per axis must be >= 1");
  nodes_ = roots_of_unity(points_);
  weights_.assign(static_cast<std::size_t>(points_), 1.0 / points_);
}

DiscRule::DiscRule(int dim, double q, int radial_points, int angular_points)
    : dim_(dim), q_(q), radial_(radial_points), angular_(angular_points) {
  if (dim_ < 1) throw DomainError("DiscRule: dimension must be >= 1");
  if (!(q_ >= 1.0)) throw DomainError("DiscRule: requires q >= 1");
  if (angular_ < 1) throw DomainError("DiscRule: angular points must be >= 1");

  const std::vector<Complex> angles = roots_of_unity(angular_);
  if (boundary_mode()) {
    // q = 1: the radial weight concentrates on the boundary circle and
    // the rule is the torus rule itself.
    radial_ = 1;
    nodes_ = angles;
    weights_.assign(static_cast<std::size_t>(angular_), 1.0 / angular_);
    return;
  }

  if (radial_ < 1) throw DomainError("DiscRule: radial points must be >= 1");
  radial_rule_ = gauss_jacobi_radial(q_, radial_);
  nodes_.reserve(static_cast<std::size_t>(radial_) * angular_);
  weights_.reserve(static_cast<std::size_t>(radial_) * angular_);
  for (int i = 0; i < radial_; ++i) {
    const double r = std::sqrt(radial_rule_.t[static_cast<std::size_t>(i)]);
    const double w = radial_rule_.weight[static_cast<std::size_t>(i)] / angular_;
    for (int k = 0; k < angular_; ++k) {
      nodes_.push_back(r * angles[static_cast<std::size_t>(k)]);
      weights_.push_back(w);
    }
  }
}

std::vector<Complex> eval_on_grid(const PolySeries& f,
                                  const std::vector<Complex>& axis_nodes) {
  const int n = f.dim();
  const std::size_t g = axis_nodes.size();
  if (g == 0) throw DomainError("eval_on_grid: empty node list");

  std::vector<std::size_t> dims(static_cast<std::size_t>(n));
  std::size_t dense_size = 1;
  for (int j = 0; j < n; ++j) {
    dims[static_cast<std::size_t>(j)] =
        static_cast<std::size_t>(f.max_degree()[static_cast<std::size_t>(j)]) + 1;
    dense_size *= dims[static_cast<std::size_t>(j)];
  }

  // Dense tensor, axis 0 slowest.
  std::vector<Complex> cur(dense_size, Complex(0.0, 0.0));
  for (const auto& [alpha, c] : f.coeffs()) {
    std::size_t flat = 0;
    for (int j = 0; j < n; ++j) {
      flat = flat * dims[static_cast<std::size_t>(j)] + static_cast<std::size_t>(alpha[j]);
    }
    cur[flat] = c;
  }

  // Contract the last remaining coefficient axis against the node list,
  // via Horner along that axis.
  for (int axis = n - 1; axis >= 0; --axis) {
    std::size_t pre = 1;
    for (int j = 0; j < axis; ++j) pre *= dims[static_cast<std::size_t>(j)];
    const std::size_t d = dims[static_cast<std::size_t>(axis)];
    std::size_t post = 1;
    for (int j = axis + 1; j < n; ++j) post *= g;

    std::vector<Complex> next(pre * g * post);
    for (std::size_t a = 0; a < pre; ++a) {
      const Complex* block = cur.data() + a * d * post;
      for (std::size_t node = 0; node < g; ++node) {
        const Complex z = axis_nodes[node];
        Complex* out = next.data() + (a * g + node) * post;
        for (std::size_t b = 0; b < post; ++b) {
          Complex acc = block[(d - 1) * post + b];
          for (std::size_t k = d - 1; k-- > 0;) {
            acc = acc * z + block[k * post + b];
          }
          out[b] = acc;
        }
      }
    }
    cur.swap(next);
  }
  return cur;
}

bool is_even_integer_exponent(double p) {
  if (!(p > 0.0)) return false;
  const double half = p / 2.0;
  return std::abs(half - std::round(half)) < 1e-12;
}

namespace {

// Mean of |f|^p over the uniform N^dim torus grid, axis-major order.
double torus_mean_abs_pow(const PolySeries& f, double p, int n_points) {
  const std::vector<Complex> nodes = roots_of_unity(n_points);
  const std::vector<Complex> values = eval_on_grid(f, nodes);
  double sum = 0.0;
  const bool even = is_even_integer_exponent(p);
  const int half = even ? static_cast<int>(std::round(p / 2.0)) : 0;
  for (const Complex& v : values) {
    double term;
    if (even) {
      const double n2 = std::norm(v);
      term = 1.0;
      for (int i = 0; i < half; ++i) term *= n2;
    } else {
      term = std::pow(std::abs(v), p);
    }
    if (!std::isfinite(term)) {
      throw QuadratureError("hardy_norm: non-finite integrand value");
    }
    sum += term;
  }
  return sum / static_cast<double>(values.size());
}

}  // namespace

ValueEstimate hardy_norm_detailed(const PolySeries& f, double p,
                                  const ConvergencePolicy& policy) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("hardy_norm: p must be positive and finite");
  }
  if (f.is_zero()) return {0.0, true, 0.0, policy.initial_points};

  int max_degree = 0;
  for (int d : f.max_degree()) max_degree = std::max(max_degree, d);

  if (is_even_integer_exponent(p)) {
    const int half = static_cast<int>(std::round(p / 2.0));
    // |f|^p is a trigonometric polynomial with per-axis frequencies in
    // [-half*D, half*D]; any N above that is alias-free. The 2D+1 floor
    // keeps the advertised resolution precondition.
    int n_points = std::max({policy.initial_points, 2 * max_degree + 1,
                             half * max_degree + 1});
    if (n_points > policy.max_points_per_axis ||
        int_pow_checked(n_points, f.dim(), policy.node_budget) > policy.node_budget) {
      throw QuadratureError("hardy_norm: exact resolution exceeds the node budget");
    }
    const double integral = torus_mean_abs_pow(f, p, n_points);
    return {std::pow(integral, 1.0 / p), true, 0.0, n_points};
  }

  int n_points = std::max(policy.initial_points, 2 * max_degree + 1);
  double prev = torus_mean_abs_pow(f, p, n_points);
  double last_delta = 0.0;
  while (true) {
    const int next = 2 * n_points;
    if (next > policy.max_points_per_axis ||
        int_pow_checked(next, f.dim(), policy.node_budget) > policy.node_budget) {
      return {std::pow(prev, 1.0 / p), false, last_delta, n_points};
    }
    const double cur = torus_mean_abs_pow(f, p, next);
    last_delta = std::abs(cur - prev);
    if (last_delta <= policy.rel_tol * std::max(std::abs(cur), 1e-300)) {
      return {std::pow(cur, 1.0 / p), true, last_delta, next};
    }
    prev = cur;
    n_points = next;
  }
}

double hardy_norm(const PolySeries& f, double p, const ConvergencePolicy& policy) {
  return hardy_norm_detailed(f, p, policy).value;
}

double hardy_norm_fixed(const PolySeries& f, double p, int points_per_axis) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("hardy_norm_fixed: p must be positive and finite");
  }
  if (points_per_axis < 1) {
    throw DomainError("hardy_norm_fixed: points must be >= 1");
  }
  if (f.is_zero()) return 0.0;
  return std::pow(torus_mean_abs_pow(f, p, points_per_axis), 1.0 / p);
}

ValueEstimate mp_at_radius_detailed(const PolySeries& f, double p, double r,
                                    const ConvergencePolicy& policy) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("mp_at_radius: radius must lie in [0, 1]");
  }
  return hardy_norm_detailed(f.dilate(r), p, policy);
}

double mp_at_radius(const PolySeries& f, double p, double r,
                    const ConvergencePolicy& policy) {
  return mp_at_radius_detailed(f, p, r, policy).value;
}

}  // namespace polyineq
