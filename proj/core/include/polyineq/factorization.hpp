#ifndef POLYINEQ_FACTORIZATION_HPP_
#define POLYINEQ_FACTORIZATION_HPP_

#include <functional>
#include <vector>

#include "polyineq/poly_series.hpp"
#include "polyineq/quadrature.hpp"

namespace polyineq {

// Finite Blaschke product: z^{origin_order} prod_a (|a|/a)(a - z)/(1 - conj(a) z)
// with zeros 0 < |a| < 1. Unimodular on the unit circle in exact
// arithmetic; eval stays finite for |z| <= 1.
struct BlaschkeProduct {
  std::vector<Complex> zeros;
  int origin_order = 0;

  Complex eval(Complex z) const;
  int degree() const { return origin_order + static_cast<int>(zeros.size()); }
};

enum class RootLocation { kInside, kBoundary, kOutside };

struct RootRecord {
  Complex location;
  double residual;  // |f(root)| / certification scale
  RootLocation cls;
};

struct RootSet {
  std::vector<RootRecord> roots;  // sorted by (re, im), multiplicities listed
  double scale;                   // coefficient 1-norm used for certification
};

// Roots of a one-variable polynomial via the balanced companion matrix.
// Every root is certified: |f(root)| must be below residual_tol times
// max(coefficient 1-norm, the largest term magnitude at the root),
// otherwise NumericalError. Classification uses the boundary band
// 1 - band <= |root| <= 1 + band.
RootSet polynomial_roots(const PolySeries& f, double boundary_band = 1e-9,
                         double residual_tol = 1e-10);

// Positive boundary samples U(zeta_k) at the N uniform angles
// zeta_k = e^{2 pi i k / N}.
class BoundaryModulus {
 public:
  explicit BoundaryModulus(std::vector<double> samples);

  int size() const { return static_cast<int>(samples_.size()); }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;
};

// Outer function f(z) = exp((1/N) sum_k (zeta_k + z)/(zeta_k - z) log U(zeta_k)),
// the trapezoid discretization of the Herglotz integral. Evaluation is
// guarded away from the boundary by delta_eval = 1/N because the
// kernel blows up at the sample points.
class OuterFunction {
 public:
  explicit OuterFunction(BoundaryModulus boundary);

  Complex eval(Complex z) const;
  double delta_eval() const { return delta_; }
  int sample_count() const { return static_cast<int>(log_samples_.size()); }

  // A-posteriori certification: max_k | |f(r zeta_k)| - U(zeta_k) | at
  // r = 1 - margin_factor / N, relative to max U. O(N^2), diagnostic.
  double boundary_match(double margin_factor = 10.0) const;

 private:
  std::vector<double> log_samples_;
  std::vector<Complex> nodes_;
  std::vector<double> samples_;
  double delta_ = 0.0;
};

struct RieszFactorization {
  BlaschkeProduct blaschke;
  // h, zero-free in the closed disc; starts as the zero placeholder
  PolySeries outer_factor = PolySeries(1, {0});
  double f_norm = 0.0;      // ||f||_p and ||h||_p on one shared grid
  double h_norm = 0.0;
  double norm_gap = 0.0;
  double min_h_near_boundary = 0.0;  // min |h| on the r = 0.999 circle grid
};

// f = B h with B collecting the zeros of f inside the unit disc and h
// polynomial and zero-free in the closed disc: dividing out each inside
// zero a and multiplying by (-a/|a|)(1 - conj(a) z) keeps the boundary
// modulus of f. Zeros within the boundary band abort with
// NumericalError; the zero polynomial is rejected.
RieszFactorization riesz_factorize(const PolySeries& f, double p,
                                   double boundary_band = 1e-9,
                                   const ConvergencePolicy& policy = {});

// h^beta for a zero-free pointwise-evaluable h, the branch fixed by the
// principal argument at the origin and continued along the radial
// segment [0, z]. The phase step count doubles until every increment is
// below pi/2, so |eval(z)| = |h(z)|^beta holds exactly by construction.
class FractionalPower {
 public:
  FractionalPower(std::function<Complex(Complex)> h, double beta);

  Complex eval(Complex z) const;
  double beta() const { return beta_; }

 private:
  std::function<Complex(Complex)> h_;
  double beta_ = 0.0;
};

FractionalPower fractional_power(std::function<Complex(Complex)> h, double beta);

// PolySeries adapter for FractionalPower; dim 1 only.
FractionalPower fractional_power(const PolySeries& h, double beta);

}  // namespace polyineq

#endif  // POLYINEQ_FACTORIZATION_HPP_
