#ifndef POLYINEQ_KERNELS_HPP_
#define POLYINEQ_KERNELS_HPP_

#include <span>

#include "polyineq/poly_series.hpp"
#include "polyineq/weight_vector.hpp"

namespace polyineq {

// Truncation controls for kernel expansions. The per-axis degree is
// raised until the certified geometric tail bound drops below the
// requested tolerance; hard_cap aborts unreachable targets.
struct KernelTruncation {
  int hard_cap = 4096;
  std::vector<int> min_degree;  // empty means start from 0
};

// Taylor expansion of K_q(z, w) = prod_j (1 - z_j conj(w_j))^{-q_j}
// about z = 0: the coefficient of z^alpha is ((q)_alpha / alpha!)
// conj(w)^alpha. The returned tail bound dominates the sup of the
// dropped part over the closed unit polydisc in z and is below tol.
// Requires |w_j| < 1 for every axis.
PolySeries kernel_series(const WeightVector& q, std::span<const Complex> w,
                         double tol, const KernelTruncation& trunc = {});

// Closed-form K_q(z, w) through the principal branch of the complex
// power; Re(1 - z_j conj(w_j)) > 0 on the open polydisc, so the branch
// cut is never met. Requires |z_j| < 1 and |w_j| < 1.
Complex kernel_eval(const WeightVector& q, std::span<const Complex> z,
                    std::span<const Complex> w);

// Norm-one reproducing element of the weighted coefficient space:
// K_q(., w) / K_q(w, w)^{1/2}, truncated to tolerance tol.
PolySeries extremal_hilbert(const WeightVector& q, std::span<const Complex> w,
                            double tol, const KernelTruncation& trunc = {});

// Boundary-norm extremal family member K(., w)^{2/p} where K is the
// unweighted product kernel (all weights 1); the exponent tuple is
// (2/p, ..., 2/p). Not normalized.
PolySeries extremal_hardy_power(double p, int dim, std::span<const Complex> w,
                                double tol, const KernelTruncation& trunc = {});

}  // namespace polyineq

#endif  // POLYINEQ_KERNELS_HPP_
