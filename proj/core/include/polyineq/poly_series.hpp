#ifndef POLYINEQ_POLY_SERIES_HPP_
#define POLYINEQ_POLY_SERIES_HPP_

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "polyineq/multi_index.hpp"

namespace polyineq {

using Complex = std::complex<double>;

// Polynomial (truncated power series) in n complex variables with a
// per-axis degree cap and a certified truncation tail bound.
//
// The tail bound dominates sup |dropped part| on the closed polydisc
// where the series was produced; exact polynomials carry 0. Coefficients
// live in a map ordered lexicographically by multi-index, so every
// traversal (evaluation, norms, serialization) follows the same
// deterministic order.
class PolySeries {
 public:
  PolySeries(int dim, std::vector<int> max_degree);

  static PolySeries constant(int dim, Complex value);
  static PolySeries monomial(const MultiIndex& alpha, Complex c = Complex(1.0, 0.0));

  int dim() const { return dim_; }
  const std::vector<int>& max_degree() const { return max_degree_; }

  // Zero for absent entries; throws DimensionError on mismatched index.
  Complex coeff(const MultiIndex& alpha) const;

  // Exact zeros are erased so the stored support stays minimal.
  // Throws DomainError when alpha exceeds the degree cap.
  void set_coeff(const MultiIndex& alpha, Complex value);

  const std::map<MultiIndex, Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  double tail_bound() const { return tail_bound_; }
  void set_tail_bound(double bound);

  // Sum of |a_alpha|; bounds sup |f| over the closed polydisc.
  double coeff_one_norm() const;
  double coeff_two_norm() const;

  // Evaluates sum a_alpha z^alpha in lexicographic coefficient order.
  Complex eval(std::span<const Complex> z) const;
  Complex eval(Complex z) const;  // dim 1 convenience

  // f_r with coefficients a_alpha r^{|alpha|}; tail bound is kept
  // (r <= 1 only shrinks the dropped part).
  PolySeries dilate(double r) const;

  PolySeries& operator+=(const PolySeries& other);
  PolySeries& operator*=(Complex scale);

  friend PolySeries operator+(PolySeries a, const PolySeries& b) { return a += b; }
  friend PolySeries operator*(Complex scale, PolySeries f) { return f *= scale; }

 private:
  int dim_ = 0;
  std::vector<int> max_degree_;
  std::map<MultiIndex, Complex> coeffs_;
  double tail_bound_ = 0.0;
};

// Coefficient-wise convolution. The two-argument form keeps every
// product term (result cap = sum of the operand caps). The capped form
// drops terms above `cap` per axis and adds the dropped coefficient
// mass to the tail bound. Input tails propagate as
//   tail(fg) <= tail(f) sup|g| + tail(g) sup|f| + tail(f) tail(g)
// with sup bounded by the coefficient 1-norm.
PolySeries multiply(const PolySeries& f, const PolySeries& g);
PolySeries multiply(const PolySeries& f, const PolySeries& g,
                    const std::vector<int>& cap);

// Coefficient-wise d/dz_axis. Requires a zero tail bound: a uniform
// tail estimate does not survive differentiation on the open disc.
PolySeries derivative(const PolySeries& f, int axis);

}  // namespace polyineq

#endif  // POLYINEQ_POLY_SERIES_HPP_
