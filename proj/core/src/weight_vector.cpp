#include "polyineq/weight_vector.hpp"

#include <cmath>

namespace polyineq {

WeightVector::WeightVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("WeightVector must have dimension >= 1");
  for (double q : entries_) {
    if (!(q > 0.0) || !std::isfinite(q)) {
      throw DomainError("WeightVector entries must be strictly positive");
    }
  }
}

WeightVector::WeightVector(double q, int dim)
    : WeightVector(std::vector<double>(static_cast<std::size_t>(dim > 0 ? dim : 0), q)) {
  if (dim < 1) throw DomainError("WeightVector dimension must be >= 1");
}

bool WeightVector::is_scalar() const {
  for (double q : entries_) {
    if (q != entries_.front()) return false;
  }
  return true;
}

WeightVector operator+(const WeightVector& a, const WeightVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("WeightVector sum: dimension mismatch");
  }
  std::vector<double> sum(a.entries_);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.entries_[i];
  return WeightVector(std::move(sum));
}

double pochhammer(double q, int beta) {
  if (!(q > 0.0)) throw DomainError("pochhammer: q must be positive");
  if (beta < 0) throw DomainError("pochhammer: beta must be non-negative");
  double value = 1.0;
  for (int i = 0; i < beta; ++i) value *= q + static_cast<double>(i);
  if (!std::isfinite(value)) throw NumericalError("pochhammer: overflow");
  return value;
}

double pochhammer(const WeightVector& q, const MultiIndex& alpha) {
  if (q.dim() != alpha.dim()) {
    throw DimensionError("pochhammer: weight and index dimension mismatch");
  }
  double value = 1.0;
  for (int j = 0; j < q.dim(); ++j) value *= pochhammer(q[j], alpha[j]);
  if (!std::isfinite(value)) throw NumericalError("pochhammer: overflow");
  return value;
}

}  // namespace polyineq
