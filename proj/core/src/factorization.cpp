#include "polyineq/factorization.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "polyineq/errors.hpp"

namespace polyineq {

namespace {

constexpr double kOriginZeroThreshold = 1e-12;

std::vector<Complex> dense_coefficients(const PolySeries& f) {
  if (f.dim() != 1) {
    throw DimensionError("factorization: one-variable polynomial required");
  }
  int degree = -1;
  for (const auto& [alpha, c] : f.coeffs()) degree = std::max(degree, alpha[0]);
  if (degree < 0) throw DomainError("factorization: zero polynomial");
  std::vector<Complex> dense(static_cast<std::size_t>(degree) + 1, Complex(0.0, 0.0));
  for (const auto& [alpha, c] : f.coeffs()) dense[static_cast<std::size_t>(alpha[0])] = c;
  return dense;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc(0.0, 0.0);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

// Parlett-Reinsch balancing with powers of two; reduces the norm split
// between rows and columns without rounding error.
void balance_in_place(Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  for (int pass = 0; pass < 100; ++pass) {
    bool converged = true;
    for (int i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(m(i, j));
        col += std::abs(m(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      const double total = row + col;
      double factor = 1.0;
      while (col < row / 2.0) {
        col *= 2.0;
        row /= 2.0;
        factor *= 2.0;
      }
      while (col > row * 2.0) {
        col /= 2.0;
        row *= 2.0;
        factor /= 2.0;
      }
      if (col + row < 0.95 * total) {
        converged = false;
        m.row(i) /= factor;
        m.col(i) *= factor;
      }
    }
    if (converged) break;
  }
}

// Synthetic division of dense coefficients by (z - a); the remainder is
// dropped (certified small through the root residual).
std::vector<Complex> deflate(const std::vector<Complex>& c, Complex a) {
  const std::size_t d = c.size() - 1;
  std::vector<Complex> quotient(d);
  Complex carry = c[d];
  for (std::size_t k = d; k-- > 0;) {
    quotient[k] = carry;
    carry = c[k] + a * carry;
  }
  return quotient;
}

}  // namespace

Complex BlaschkeProduct::eval(Complex z) const {
  Complex value(1.0, 0.0);
  for (int k = 0; k < origin_order; ++k) value *= z;
  for (const Complex& a : zeros) {
    const double r = std::abs(a);
    value *= (r / a) * (a - z) / (Complex(1.0, 0.0) - std::conj(a) * z);
  }
  return value;
}

RootSet polynomial_roots(const PolySeries& f, double boundary_band,
                         double residual_tol) {
  const std::vector<Complex> dense = dense_coefficients(f);
  const int degree = static_cast<int>(dense.size()) - 1;

  RootSet out;
  out.scale = 0.0;
  for (const Complex& c : dense) out.scale += std::abs(c);
  if (degree == 0) return out;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (int j = 1; j < degree; ++j) companion(j, j - 1) = Complex(1.0, 0.0);
  const Complex lead = dense[static_cast<std::size_t>(degree)];
  for (int j = 0; j < degree; ++j) {
    companion(j, degree - 1) = -dense[static_cast<std::size_t>(j)] / lead;
  }
  balance_in_place(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("polynomial_roots: eigenvalue iteration failed");
  }

  std::vector<Complex> roots(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  for (const Complex& r : roots) {
    const double value = std::abs(horner(dense, r));
    // Far roots evaluate at the scale of the largest term, so the
    // certification scale follows the evaluation magnitude; inside the
    // closed disc it coincides with the coefficient 1-norm.
    double term_scale = 0.0;
    double zpow = 1.0;
    const double az = std::abs(r);
    for (const Complex& c : dense) {
      term_scale = std::max(term_scale, std::abs(c) * zpow);
      zpow *= az;
    }
    const double scale = std::max(out.scale, term_scale);
    const double residual = value / scale;
    if (!(residual < residual_tol)) {
      throw NumericalError("polynomial_roots: residual certification failed");
    }
    RootRecord rec;
    rec.location = r;
    rec.residual = residual;
    if (az < 1.0 - boundary_band) {
      rec.cls = RootLocation::kInside;
    } else if (az <= 1.0 + boundary_band) {
      rec.cls = RootLocation::kBoundary;
    } else {
      rec.cls = RootLocation::kOutside;
    }
    out.roots.push_back(rec);
  }
  return out;
}

BoundaryModulus::BoundaryModulus(std::vector<double> samples)
    : samples_(std::move(samples)) {
  // Below 8 nodes the eval guard delta = 1/N would exclude most of the
  // disc, so short sample lists are rejected outright.
  if (samples_.size() < 8) {
    throw DomainError("BoundaryModulus: at least 8 samples required");
  }
  for (double u : samples_) {
    if (!(u > 0.0) || !std::isfinite(u)) {
      throw DomainError("BoundaryModulus: samples must be positive and finite");
    }
  }
}

OuterFunction::OuterFunction(BoundaryModulus boundary)
    : samples_(boundary.samples()) {
  const int n = static_cast<int>(samples_.size());
  log_samples_.resize(static_cast<std::size_t>(n));
  nodes_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    log_samples_[static_cast<std::size_t>(k)] = std::log(samples_[static_cast<std::size_t>(k)]);
    const double theta = 2.0 * std::numbers::pi * k / n;
    nodes_[static_cast<std::size_t>(k)] = Complex(std::cos(theta), std::sin(theta));
  }
  delta_ = 1.0 / n;
}

Complex OuterFunction::eval(Complex z) const {
  if (std::abs(z) >= 1.0 - delta_) {
    throw DomainError("OuterFunction: evaluation too close to the boundary");
  }
  Complex herglotz(0.0, 0.0);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    herglotz += (nodes_[k] + z) / (nodes_[k] - z) * log_samples_[k];
  }
  herglotz /= static_cast<double>(nodes_.size());
  return std::exp(herglotz);
}

double OuterFunction::boundary_match(double margin_factor) const {
  const double r = 1.0 - margin_factor * delta_;
  if (!(r > 0.0) || r >= 1.0 - delta_) {
    throw DomainError("OuterFunction: invalid certification radius");
  }
  double umax = 0.0;
  for (double u : samples_) umax = std::max(umax, u);
  double worst = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const double value = std::abs(eval(r * nodes_[k]));
    worst = std::max(worst, std::abs(value - samples_[k]));
  }
  return worst / umax;
}

RieszFactorization riesz_factorize(const PolySeries& f, double p,
                                   double boundary_band,
                                   const ConvergencePolicy& policy) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("riesz_factorize: p must be positive");
  }
  const RootSet roots = polynomial_roots(f, boundary_band);
  for (const RootRecord& rec : roots.roots) {
    if (rec.cls == RootLocation::kBoundary) {
      throw NumericalError("riesz_factorize: zero inside the boundary band");
    }
  }

  RieszFactorization out;
  std::vector<Complex> dense = dense_coefficients(f);
  for (const RootRecord& rec : roots.roots) {
    if (rec.cls != RootLocation::kInside) continue;
    dense = deflate(dense, rec.location);
    if (std::abs(rec.location) <= kOriginZeroThreshold) {
      ++out.blaschke.origin_order;
    } else {
      out.blaschke.zeros.push_back(rec.location);
    }
  }

  // h = deflated factor times prod (-a/|a|)(1 - conj(a) z); the
  // reflected factors put the divided zeros at 1/conj(a), outside the
  // closed disc, so h is zero-free there and |h| = |f| on the circle.
  PolySeries h(1, {static_cast<int>(dense.size()) - 1});
  for (std::size_t k = 0; k < dense.size(); ++k) {
    h.set_coeff(MultiIndex({static_cast<int>(k)}), dense[k]);
  }
  for (const Complex& a : out.blaschke.zeros) {
    PolySeries factor(1, {1});
    factor.set_coeff(MultiIndex({0}), -a / std::abs(a));
    factor.set_coeff(MultiIndex({1}), std::conj(a) * a / std::abs(a));
    h = multiply(h, factor);
  }

  const ValueEstimate f_est = hardy_norm_detailed(f, p, policy);
  out.f_norm = f_est.value;
  out.h_norm = hardy_norm_fixed(h, p, f_est.points_per_axis);
  out.norm_gap = std::abs(out.f_norm - out.h_norm);

  const int grid = std::max(f_est.points_per_axis, 256);
  double hmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / grid;
    const Complex z = 0.999 * Complex(std::cos(theta), std::sin(theta));
    hmin = std::min(hmin, std::abs(h.eval(z)));
  }
  out.min_h_near_boundary = hmin;
  out.outer_factor = std::move(h);
  return out;
}

FractionalPower::FractionalPower(std::function<Complex(Complex)> h, double beta)
    : h_(std::move(h)), beta_(beta) {
  if (!h_) throw DomainError("FractionalPower: missing base function");
  if (!std::isfinite(beta_)) throw DomainError("FractionalPower: beta must be finite");
}

Complex FractionalPower::eval(Complex z) const {
  // Phase continuation along t -> h(t z); step count doubles until all
  // increments are principal (< pi/2), which pins the branch.
  for (int steps = 64; steps <= (1 << 20); steps *= 2) {
    Complex prev = h_(Complex(0.0, 0.0));
    if (!(std::abs(prev) > 1e-280)) {
      throw NumericalError("FractionalPower: base vanishes at the origin");
    }
    double phase = std::arg(prev);
    bool ok = true;
    Complex last = prev;
    for (int s = 1; s <= steps; ++s) {
      const Complex w = h_(z * (static_cast<double>(s) / steps));
      if (!(std::abs(w) > 1e-280)) {
        throw NumericalError("FractionalPower: base vanishes along the segment");
      }
      const double step = std::arg(w / prev);
      if (std::abs(step) > std::numbers::pi / 2.0) {
        ok = false;
        break;
      }
      phase += step;
      prev = w;
      last = w;
    }
    if (ok) {
      return std::polar(std::pow(std::abs(last), beta_), beta_ * phase);
    }
  }
  throw NumericalError("FractionalPower: phase tracking failed to resolve");
}

FractionalPower fractional_power(std::function<Complex(Complex)> h, double beta) {
  return FractionalPower(std::move(h), beta);
}

FractionalPower fractional_power(const PolySeries& h, double beta) {
  if (h.dim() != 1) {
    throw DimensionError("fractional_power: one-variable series required");
  }
  return FractionalPower([h](Complex z) { return h.eval(z); }, beta);
}

}  // namespace polyineq
