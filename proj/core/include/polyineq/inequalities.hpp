#ifndef POLYINEQ_INEQUALITIES_HPP_
#define POLYINEQ_INEQUALITIES_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyineq/norms.hpp"
#include "polyineq/poly_series.hpp"
#include "polyineq/quadrature.hpp"
#include "polyineq/weight_vector.hpp"

namespace polyineq {

enum class InequalityId {
  kBurbeaHilbert,
  kMainProduct,
  kEqualFunction,
  kCarleman,
  kCarlemanDouble,
  kIsoperimetric,
  kLogSub,
  kPhiMain,
};

std::string_view inequality_name(InequalityId id);
std::optional<InequalityId> inequality_from_name(std::string_view name);

enum class Verdict { kHolds, kEquality, kViolated };

std::string_view verdict_name(Verdict v);

struct GapTolerances {
  double violation_base = 1e-10;  // absolute slack before declaring a violation
  double equality_rel = 1e-6;     // relative width of the equality band
};

// Adaptive refinement control for the polydisc integrals: radial and
// angular resolution double together until the value stabilizes.
struct DiscPolicy {
  int initial_radial = 8;
  int initial_angular = 16;
  int max_doublings = 3;
  double rel_tol = 1e-10;
  long long node_budget = 1 << 22;
};

struct EvalContext {
  ConvergencePolicy torus;
  DiscPolicy disc;
  GapTolerances tolerances;
};

struct GapDiagnostics {
  std::string description;
  std::vector<int> degrees;  // max degree per input function
  double tail_bound = 0.0;   // summed certified input tails
  int radial_points = 0;     // final lhs rule resolution, 0 if no quadrature
  int angular_points = 0;
  bool quadrature_converged = true;
  double quadrature_uncertainty = 0.0;
  double cross_check_delta = 0.0;  // path-consistency residual where defined
  bool certified = true;
  std::string label = "certified";
};

// One inequality evaluation. gap = rhs - lhs, ratio = lhs / rhs with
// ratio = 0 when both sides vanish. The verdict is
//   violated  when gap < -tolerance,
//   equality  when |gap| <= equality_tolerance,
//   holds     otherwise,
// where tolerance adds the propagated truncation and quadrature
// contributions on top of the base and equality_tolerance scales with
// the side magnitudes.
struct GapReport {
  InequalityId id = InequalityId::kMainProduct;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  double equality_tolerance = 0.0;
  Verdict verdict = Verdict::kHolds;
  GapDiagnostics diagnostics;
};

// || prod f_j ||_q <= prod || f_j ||_{q_j} with q = sum q_j, in the
// weighted coefficient norms. Pure series arithmetic, no quadrature.
GapReport burbea_hilbert_gap(std::span<const PolySeries> f,
                             std::span<const WeightVector> q,
                             const EvalContext& ctx = {});

// int_{U^n} prod |f_j|^{p_j} dA_{m-2} <= prod ||f_j||_{p_j}^{p_j} for
// m = number of functions >= 2.
GapReport main_product_gap(std::span<const PolySeries> f,
                           std::span<const double> p,
                           const EvalContext& ctx = {});

// main_product_gap with m equal functions and a single exponent.
GapReport equal_function_gap(const PolySeries& f, double p, int m,
                             const EvalContext& ctx = {});

// 4 pi int_U |f|^{2p} dA <= (int_T |f|^p |dzeta|)^2 in unnormalized
// form; the sides are also cross-checked against the normalized m = 2
// equal-function path and the relative difference is recorded in
// diagnostics.cross_check_delta.
GapReport carleman_gap(const PolySeries& f, double p,
                       const EvalContext& ctx = {});

// 4 pi int_U |f1||f2| dA <= (int_T |f1||dzeta|)(int_T |f2||dzeta|).
GapReport carleman_double_gap(const PolySeries& f1, const PolySeries& f2,
                              const EvalContext& ctx = {});

// Isoperimetric inequality 4 pi Area <= Length^2 for the image of the
// disc under z -> f(z), computed through Carleman: Area as the
// area-counting integral of |f'|^2 and Length as the boundary integral
// of |f'|.
GapReport isoperimetric_analytic(const PolySeries& f, const EvalContext& ctx = {});

// Both sides depend on f only through f', so the derivative of the
// parametrization can be supplied directly.
GapReport isoperimetric_check(const PolySeries& derivative_series,
                              const EvalContext& ctx = {});

// Sampled-curve form of the same check.
GapReport isoperimetric_check(std::span<const Complex> curve,
                              const EvalContext& ctx = {});

// Same check for a sampled closed curve: shoelace area against
// polygonal length. Needs at least 3 vertices; the polygon closes
// cyclically.
GapReport isoperimetric_sampled(std::span<const Complex> curve,
                                const EvalContext& ctx = {});

// Finite sum of moduli of polynomial series, a logarithmically
// subharmonic representative on the unit disc.
struct LogSubRepresentative {
  std::vector<PolySeries> terms;

  double eval(Complex z) const;
};

// int_U prod U_j dA_{q-2} <= prod ||U_j||_1 with ||.||_1 the boundary
// mean. Certified for q = number of representatives; other q evaluate
// with an uncertified label.
GapReport logsub_gap(std::span<const LogSubRepresentative> u, double mu_q,
                     const EvalContext& ctx = {});

// User-supplied coupling function for the generic inequality
// int Phi(|f_1|^{p_1}, ..., |f_m|^{p_m}) dA_{q-2} <= Phi(||f_1||^{p_1}, ...).
// The contract (non-negative, non-decreasing in each argument,
// vanishing when any argument vanishes) is spot-checked before use.
struct PhiFunction {
  std::string name;
  std::function<double(std::span<const double>)> fn;
};

PhiFunction phi_product();
PhiFunction phi_min();
PhiFunction phi_product_power(double s);

// Only the product Phi with mu_q = m is a certified instance; all
// other couplings are evaluated and labeled uncertified.
GapReport phi_main_gap(std::span<const PolySeries> f, std::span<const double> p,
                       const PhiFunction& phi, double mu_q,
                       const EvalContext& ctx = {});

}  // namespace polyineq

#endif  // POLYINEQ_INEQUALITIES_HPP_
