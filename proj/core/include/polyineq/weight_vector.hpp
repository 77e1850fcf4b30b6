#ifndef POLYINEQ_WEIGHT_VECTOR_HPP_
#define POLYINEQ_WEIGHT_VECTOR_HPP_

#include <vector>

#include "polyineq/errors.hpp"
#include "polyineq/multi_index.hpp"

namespace polyineq {

// Strictly positive real weight tuple q = (q_1, ..., q_n). A scalar q
// stands for the constant tuple (q, ..., q).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> entries);

  // Replicates a single weight across n axes.
  WeightVector(double q, int dim);

  int dim() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }

  // True when all entries are equal (the only case with an integral
  // norm representation).
  bool is_scalar() const;

  // Component-wise sum; dimensions must agree.
  friend WeightVector operator+(const WeightVector& a, const WeightVector& b);

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> entries_;
};

// Rising factorial (q)_beta = q (q+1) ... (q+beta-1), with (q)_0 = 1.
double pochhammer(double q, int beta);

// Product over axes of (q_j)_{alpha_j}.
double pochhammer(const WeightVector& q, const MultiIndex& alpha);

}  // namespace polyineq

#endif  // POLYINEQ_WEIGHT_VECTOR_HPP_
