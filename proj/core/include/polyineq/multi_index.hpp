#ifndef POLYINEQ_MULTI_INDEX_HPP_
#define POLYINEQ_MULTI_INDEX_HPP_

#include <compare>
#include <cstddef>
#include <numeric>
#include <vector>

#include "polyineq/errors.hpp"

namespace polyineq {

// Exponent tuple of a monomial z^alpha. Entries are non-negative;
// ordering is lexicographic, which fixes the iteration and summation
// order everywhere a PolySeries is traversed.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
      if (e < 0) throw DomainError("MultiIndex entries must be non-negative");
    }
  }

  static MultiIndex zeros(int dim) {
    if (dim < 1) throw DomainError("MultiIndex dimension must be >= 1");
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0));
  }

  int dim() const { return static_cast<int>(entries_.size()); }

  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

  int total_degree() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
  }

  const std::vector<int>& entries() const { return entries_; }

  auto operator<=>(const MultiIndex& other) const = default;

 private:
  std::vector<int> entries_;
};

}  // namespace polyineq

#endif  // POLYINEQ_MULTI_INDEX_HPP_
