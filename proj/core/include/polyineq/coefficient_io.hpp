#ifndef POLYINEQ_COEFFICIENT_IO_HPP_
#define POLYINEQ_COEFFICIENT_IO_HPP_

#include <string>
#include <vector>

#include "polyineq/factorization.hpp"
#include "polyineq/poly_series.hpp"

namespace polyineq {

// Coefficient files are JSON documents
//   {"dim": n, "degree": [d_1...d_n], "coeffs": [{"alpha": [...], "re": x, "im": y}, ...]}
// with missing multi-indices meaning zero. Emission prints doubles
// with 17 significant digits and walks coefficients in lexicographic
// order, so save/load round-trips are lossless and byte-stable.
// Malformed input throws IoError.
std::string coefficients_to_string(const PolySeries& f);
PolySeries coefficients_from_string(const std::string& text);
void save_coefficients(const PolySeries& f, const std::string& path);
PolySeries load_coefficients(const std::string& path);

// Two-column text: angle fraction k/N in order, then the positive
// modulus sample. Blank lines and lines starting with '#' are skipped.
BoundaryModulus load_boundary_modulus(const std::string& path);

// Two-column text of vertex coordinates (x y), one closed-curve vertex
// per line, at least three.
std::vector<Complex> load_curve(const std::string& path);

}  // namespace polyineq

#endif  // POLYINEQ_COEFFICIENT_IO_HPP_
