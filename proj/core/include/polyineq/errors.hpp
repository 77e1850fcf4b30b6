#ifndef POLYINEQ_ERRORS_HPP_
#define POLYINEQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace polyineq {

// Base class for all library errors. Precondition violations and
// numerical failures throw subclasses of this; callers that need to
// distinguish can catch the specific type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dimension or degree mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid argument value (non-positive weight, exponent out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quadrature node produced a non-finite integrand value, or a rule
// could not be constructed.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Truncation target unreachable, overflow in a coefficient sum, root
// residual too large, zero on the boundary band, and similar numerical
// failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Unreadable, unwritable, or malformed input/output files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyineq

#endif  // POLYINEQ_ERRORS_HPP_
