#ifndef POLYINEQ_RANDOM_FUNCTION_HPP_
#define POLYINEQ_RANDOM_FUNCTION_HPP_

#include <vector>

#include "polyineq/poly_series.hpp"

namespace polyineq {

enum class CoefficientLaw { kUniformDisc, kGaussian };

// Seeded random polynomial with i.i.d. coefficients over the full
// degree box, drawn in lexicographic multi-index order so the result
// is a pure function of the arguments. The identically-zero draw is
// resampled; everything else, including individual zero coefficients,
// is kept. The draws avoid std:: distribution objects on purpose:
// their streams are not pinned across standard library versions.
PolySeries generate_random_function(unsigned long long seed, int n,
                                    const std::vector<int>& degree,
                                    CoefficientLaw law);
PolySeries generate_random_function(unsigned long long seed, int n, int degree,
                                    CoefficientLaw law);

// Uniform draw from the closed polydisc of radius max_radius < 1.
std::vector<Complex> random_interior_point(unsigned long long seed, int n,
                                           double max_radius);

// Stream splitter for independent deterministic substreams (trials,
// tuple members) derived from one user seed.
unsigned long long derive_seed(unsigned long long seed, unsigned long long salt);

}  // namespace polyineq

#endif  // POLYINEQ_RANDOM_FUNCTION_HPP_
