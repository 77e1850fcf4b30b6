#ifndef POLYINEQ_EXTREMAL_SEARCH_HPP_
#define POLYINEQ_EXTREMAL_SEARCH_HPP_

#include <optional>
#include <span>
#include <vector>

#include "polyineq/inequalities.hpp"
#include "polyineq/poly_series.hpp"
#include "polyineq/weight_vector.hpp"

namespace polyineq {

// Which inequality a search targets and the fixed data it needs. The
// exponent, weight and measure fields are filled with canonical
// defaults (p = 2, q = 1, mu_q = m) when left empty.
struct SearchProblem {
  InequalityId id = InequalityId::kCarleman;
  int n = 1;                    // ambient dimension
  int m = 2;                    // functions or representatives
  std::vector<double> p;        // exponents where the inequality takes them
  std::vector<WeightVector> q;  // burbea_hilbert weights
  double mu_q = 0.0;            // logsub / phi_main measure parameter
};

// Parametrized function family. coefficient_ball exposes the real and
// imaginary parts of every coefficient up to a degree cap, subject to a
// coefficient 2-norm cap (the ratio is scale-invariant, the cap only
// conditions the search). kernel_family exposes one shared interior
// point w with |w_j| <= rho and decodes to the truncated extremal tuple
// of the target inequality.
class SearchSpace {
 public:
  enum class Family { kCoefficientBall, kKernelFamily };

  static SearchSpace coefficient_ball(SearchProblem problem, int degree,
                                      double norm_cap = 10.0);
  static SearchSpace kernel_family(SearchProblem problem, double rho = 0.6,
                                   double tail_tol = 1e-8);

  Family family() const { return family_; }
  const SearchProblem& problem() const { return problem_; }
  int degree() const { return degree_; }
  double norm_cap() const { return norm_cap_; }
  double rho() const { return rho_; }
  double tail_tol() const { return tail_tol_; }

  // Functions produced by one decode: 1 for the single-function
  // inequalities, problem.m otherwise.
  int function_count() const;
  int parameter_count() const;

  // nullopt marks a decoder rejection (out-of-bounds parameters, zero
  // function, norm cap exceeded).
  std::optional<std::vector<PolySeries>> decode(std::span<const double> params) const;

 private:
  SearchSpace() = default;

  Family family_ = Family::kCoefficientBall;
  SearchProblem problem_;
  int degree_ = 0;
  double norm_cap_ = 10.0;
  double rho_ = 0.6;
  double tail_tol_ = 1e-8;
};

// lhs/rhs ratio of the target inequality on a decoded tuple, with full
// tolerance bookkeeping from the inequalities module.
double inequality_ratio(const SearchProblem& problem,
                        std::span<const PolySeries> tuple,
                        const EvalContext& ctx = {});

// Truncated extremal tuple of the target inequality at the shared
// interior point w: the kernel-family decode used by the searches,
// exposed for equality-case verification.
std::vector<PolySeries> extremal_tuple(const SearchProblem& problem,
                                       std::span<const Complex> w,
                                       double tail_tol);

struct SearchResult {
  double best_ratio = 0.0;
  std::vector<double> best_parameters;
  long long evaluations = 0;
  long long rejections = 0;
  bool converged = false;
  double nearest_kernel_distance = 0.0;
  std::vector<double> restart_best;  // per restart, fixed index order
};

// Seeded Nelder-Mead ascent of the ratio with 5 restarts sharing the
// evaluation budget. Deterministic: identical seeds and budgets give
// bit-identical results. Requires budget >= 50 * parameter_count();
// throws DomainError when the decoder rejects more than half of all
// attempted evaluations.
SearchResult maximize_ratio(const SearchSpace& space, long long budget,
                            unsigned long long seed, const EvalContext& ctx = {});

// Coefficient-space gap between a tuple and the best-fitting
// kernel-family member, minimized over the shared point w and the
// per-function complex scaling (extremals are defined only up to
// nonzero constants). Returned as a root-mean-square of per-function
// relative distances.
double nearest_kernel_distance(const SearchProblem& problem,
                               std::span<const PolySeries> tuple,
                               double rho = 0.95, double tail_tol = 1e-6);

struct ProfilePoint {
  double parameter = 0.0;
  double ratio = 0.0;
  bool valid = false;
};

// Ratio along the straight parameter segment from `from` to `to`;
// decoder rejections are recorded as invalid points, not errors.
std::vector<ProfilePoint> ratio_profile(const SearchSpace& space,
                                        std::span<const double> from,
                                        std::span<const double> to, int samples,
                                        const EvalContext& ctx = {});

}  // namespace polyineq

#endif  // POLYINEQ_EXTREMAL_SEARCH_HPP_
