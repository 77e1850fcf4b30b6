#include "polyineq/poly_series.hpp"

#include <cmath>

#include "polyineq/errors.hpp"

namespace polyineq {

namespace {

void check_dims(const PolySeries& f, const MultiIndex& alpha) {
  if (alpha.dim() != f.dim()) {
    throw DimensionError("PolySeries: multi-index dimension mismatch");
  }
}

bool within_cap(const MultiIndex& alpha, const std::vector<int>& cap) {
  for (int j = 0; j < alpha.dim(); ++j) {
    if (alpha[j] > cap[static_cast<std::size_t>(j)]) return false;
  }
  return true;
}

}  // namespace

PolySeries::PolySeries(int dim, std::vector<int> max_degree)
    : dim_(dim), max_degree_(std::move(max_degree)) {
  if (dim_ < 1) throw DomainError("PolySeries dimension must be >= 1");
  if (static_cast<int>(max_degree_.size()) != dim_) {
    throw DimensionError("PolySeries: degree cap dimension mismatch");
  }
  for (int d : max_degree_) {
    if (d < 0) throw DomainError("PolySeries degree cap must be non-negative");
  }
}

PolySeries PolySeries::constant(int dim, Complex value) {
  PolySeries f(dim, std::vector<int>(static_cast<std::size_t>(dim), 0));
  f.set_coeff(MultiIndex::zeros(dim), value);
  return f;
}

PolySeries PolySeries::monomial(const MultiIndex& alpha, Complex c) {
  PolySeries f(alpha.dim(), alpha.entries());
  f.set_coeff(alpha, c);
  return f;
}

Complex PolySeries::coeff(const MultiIndex& alpha) const {
  check_dims(*this, alpha);
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

void PolySeries::set_coeff(const MultiIndex& alpha, Complex value) {
  check_dims(*this, alpha);
  if (!within_cap(alpha, max_degree_)) {
    throw DomainError("PolySeries: coefficient beyond degree cap");
  }
  if (value == Complex(0.0, 0.0)) {
    coeffs_.erase(alpha);
  } else {
    coeffs_[alpha] = value;
  }
}

void PolySeries::set_tail_bound(double bound) {
  if (!(bound >= 0.0) || !std::isfinite(bound)) {
    throw DomainError("PolySeries: tail bound must be finite and >= 0");
  }
  tail_bound_ = bound;
}

double PolySeries::coeff_one_norm() const {
  double sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) sum += std::abs(c);
  return sum;
}

double PolySeries::coeff_two_norm() const {
  double sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) sum += std::norm(c);
  return std::sqrt(sum);
}

Complex PolySeries::eval(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != dim_) {
    throw DimensionError("PolySeries::eval: point dimension mismatch");
  }
  // Power tables per axis keep evaluation O(terms * dim) and the
  // summation order is the map order.
  std::vector<std::vector<Complex>> pow(static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) {
    auto& col = pow[static_cast<std::size_t>(j)];
    col.resize(static_cast<std::size_t>(max_degree_[static_cast<std::size_t>(j)]) + 1);
    col[0] = Complex(1.0, 0.0);
    for (std::size_t k = 1; k < col.size(); ++k) col[k] = col[k - 1] * z[static_cast<std::size_t>(j)];
  }
  Complex sum(0.0, 0.0);
  for (const auto& [alpha, c] : coeffs_) {
    Complex term = c;
    for (int j = 0; j < dim_; ++j) {
      term *= pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(alpha[j])];
    }
    sum += term;
  }
  return sum;
}

Complex PolySeries::eval(Complex z) const {
  return eval(std::span<const Complex>(&z, 1));
}

PolySeries PolySeries::dilate(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("PolySeries::dilate: radius must be finite and >= 0");
  }
  PolySeries out(dim_, max_degree_);
  for (const auto& [alpha, c] : coeffs_) {
    out.set_coeff(alpha, c * std::pow(r, alpha.total_degree()));
  }
  out.set_tail_bound(tail_bound_);
  return out;
}

PolySeries& PolySeries::operator+=(const PolySeries& other) {
  if (other.dim_ != dim_) throw DimensionError("PolySeries sum: dimension mismatch");
  for (int j = 0; j < dim_; ++j) {
    auto ju = static_cast<std::size_t>(j);
    if (other.max_degree_[ju] > max_degree_[ju]) max_degree_[ju] = other.max_degree_[ju];
  }
  for (const auto& [alpha, c] : other.coeffs_) {
    set_coeff(alpha, coeff(alpha) + c);
  }
  tail_bound_ += other.tail_bound_;
  return *this;
}

PolySeries& PolySeries::operator*=(Complex scale) {
  if (scale == Complex(0.0, 0.0)) {
    coeffs_.clear();
  } else {
    for (auto& [alpha, c] : coeffs_) c *= scale;
  }
  tail_bound_ *= std::abs(scale);
  return *this;
}

PolySeries multiply(const PolySeries& f, const PolySeries& g) {
  if (f.dim() != g.dim()) throw DimensionError("multiply: dimension mismatch");
  std::vector<int> cap(static_cast<std::size_t>(f.dim()));
  for (std::size_t j = 0; j < cap.size(); ++j) {
    cap[j] = f.max_degree()[j] + g.max_degree()[j];
  }
  return multiply(f, g, cap);
}

PolySeries multiply(const PolySeries& f, const PolySeries& g,
                    const std::vector<int>& cap) {
  if (f.dim() != g.dim()) throw DimensionError("multiply: dimension mismatch");
  if (static_cast<int>(cap.size()) != f.dim()) {
    throw DimensionError("multiply: cap dimension mismatch");
  }
  PolySeries out(f.dim(), cap);

  std::map<MultiIndex, Complex> acc;
  double dropped = 0.0;
  std::vector<int> sum_entries(static_cast<std::size_t>(f.dim()));
  for (const auto& [a, ca] : f.coeffs()) {
    for (const auto& [b, cb] : g.coeffs()) {
      for (int j = 0; j < f.dim(); ++j) {
        sum_entries[static_cast<std::size_t>(j)] = a[j] + b[j];
      }
      MultiIndex sum(sum_entries);
      Complex term = ca * cb;
      if (within_cap(sum, cap)) {
        acc[sum] += term;
      } else {
        dropped += std::abs(term);
      }
    }
  }
  for (const auto& [alpha, c] : acc) out.set_coeff(alpha, c);

  double tf = f.tail_bound(), tg = g.tail_bound();
  out.set_tail_bound(tf * g.coeff_one_norm() + tg * f.coeff_one_norm() +
                     tf * tg + dropped);
  return out;
}

PolySeries derivative(const PolySeries& f, int axis) {
  if (axis < 0 || axis >= f.dim()) {
    throw DimensionError("derivative: axis out of range");
  }
  if (f.tail_bound() > 0.0) {
    throw DomainError("derivative: series carries a non-zero tail bound");
  }
  std::vector<int> cap = f.max_degree();
  if (cap[static_cast<size_t>(axis)] > 0) --cap[static_cast<size_t>(axis)];
  PolySeries out(f.dim(), cap);
  for (const auto& [alpha, c] : f.coeffs()) {
    int k = alpha[axis];
    if (k == 0) continue;
    std::vector<int> idx = alpha.entries();
    --idx[static_cast<size_t>(axis)];
    out.set_coeff(MultiIndex(idx), c * static_cast<double>(k));
  }
  return out;
}

}  // namespace polyineq
