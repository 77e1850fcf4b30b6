#include "polyineq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <utility>

#include "polyineq/errors.hpp"

namespace polyineq {

namespace {

constexpr double kPi = std::numbers::pi;

struct NamedId {
  InequalityId id;
  std::string_view name;
};

constexpr NamedId kIdTable[] = {
    {InequalityId::kBurbeaHilbert, "burbea_hilbert"},
    {InequalityId::kMainProduct, "main_product"},
    {InequalityId::kEqualFunction, "equal_function"},
    {InequalityId::kCarleman, "carleman"},
    {InequalityId::kCarlemanDouble, "carleman_double"},
    {InequalityId::kIsoperimetric, "isoperimetric"},
    {InequalityId::kLogSub, "logsub"},
    {InequalityId::kPhiMain, "phi_main"},
};

// Bound on |x^p - y^p| when x, y >= 0 stay within tau of a value known
// to lie in [lo, hi]. Used to propagate certified truncation tails
// through the power map.
double pow_perturbation(double p, double lo, double hi, double tau) {
  if (tau <= 0.0) return 0.0;
  if (p >= 1.0) return p * std::pow(hi + tau, p - 1.0) * tau;
  const double base = std::max(lo - tau, 0.0);
  if (base > 0.0) return p * std::pow(base, p - 1.0) * tau;
  return std::pow(tau, p);
}

double abs_pow(double x, double p, int even_half) {
  if (even_half > 0) {
    const double x2 = x * x;
    double v = 1.0;
    for (int i = 0; i < even_half; ++i) v *= x2;
    return v;
  }
  return std::pow(x, p);
}

struct LevelResult {
  double mean = 0.0;
  std::vector<double> min_abs;
  std::vector<double> max_abs;
};

struct DiscEstimate {
  double value = 0.0;
  bool converged = true;
  double last_delta = 0.0;
  int radial = 0;
  int angular = 0;
  std::vector<double> min_abs;
  std::vector<double> max_abs;
};

// Mean of combine(|f_0(z)|, ..., |f_{k-1}(z)|) against dA_{q-2} at one
// fixed resolution, walking the tensor grid axis-major.
template <class Combine>
LevelResult disc_level(int dim, double q, std::span<const PolySeries> funcs,
                       Combine&& combine, int radial, int angular) {
  const DiscRule rule(dim, q, radial, angular);
  const std::vector<Complex>& nodes = rule.axis_nodes();
  const std::vector<double>& wts = rule.axis_weights();
  const std::size_t g = nodes.size();

  std::vector<std::vector<Complex>> vals;
  vals.reserve(funcs.size());
  for (const PolySeries& fn : funcs) vals.push_back(eval_on_grid(fn, nodes));

  std::size_t total = 1;
  for (int j = 0; j < dim; ++j) total *= g;

  LevelResult out;
  out.min_abs.assign(funcs.size(), std::numeric_limits<double>::infinity());
  out.max_abs.assign(funcs.size(), 0.0);

  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> a(funcs.size());
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    double w = 1.0;
    for (int j = 0; j < dim; ++j) w *= wts[idx[static_cast<std::size_t>(j)]];
    for (std::size_t k = 0; k < vals.size(); ++k) {
      const double m = std::abs(vals[k][flat]);
      a[k] = m;
      out.min_abs[k] = std::min(out.min_abs[k], m);
      out.max_abs[k] = std::max(out.max_abs[k], m);
    }
    const double v = combine(std::span<const double>(a.data(), a.size()));
    if (!std::isfinite(v)) {
      throw QuadratureError("inequality: non-finite integrand value at a node");
    }
    sum += w * v;
    int axis = dim - 1;
    while (axis >= 0) {
      auto au = static_cast<std::size_t>(axis);
      if (++idx[au] < g) break;
      idx[au] = 0;
      --axis;
    }
  }
  out.mean = sum;
  return out;
}

long long level_nodes(int dim, double q, int radial, int angular,
                      long long budget) {
  const long long g =
      (q == 1.0) ? angular : static_cast<long long>(radial) * angular;
  long long total = 1;
  for (int j = 0; j < dim; ++j) {
    total *= g;
    if (total > budget) return budget + 1;
  }
  return total;
}

// Doubles radial and angular resolution together until the mean
// stabilizes. An optional (radial, angular) exactness hint evaluates in
// one shot when it fits the node budget.
template <class Combine>
DiscEstimate disc_adaptive(int dim, double q, std::span<const PolySeries> funcs,
                           Combine&& combine, const DiscPolicy& pol,
                           std::optional<std::pair<int, int>> exact = {}) {
  if (exact &&
      level_nodes(dim, q, exact->first, exact->second, pol.node_budget) <=
          pol.node_budget) {
    LevelResult lv = disc_level(dim, q, funcs, combine, exact->first, exact->second);
    return {lv.mean,    true,
            0.0,        q == 1.0 ? 1 : exact->first,
            exact->second, std::move(lv.min_abs),
            std::move(lv.max_abs)};
  }

  int radial = pol.initial_radial;
  int angular = pol.initial_angular;
  if (level_nodes(dim, q, radial, angular, pol.node_budget) > pol.node_budget) {
    throw QuadratureError("inequality: initial disc rule exceeds the node budget");
  }
  LevelResult prev = disc_level(dim, q, funcs, combine, radial, angular);
  double last_delta = 0.0;
  bool converged = false;
  for (int it = 0; it < pol.max_doublings; ++it) {
    const int r2 = 2 * radial;
    const int n2 = 2 * angular;
    if (level_nodes(dim, q, r2, n2, pol.node_budget) > pol.node_budget) break;
    LevelResult cur = disc_level(dim, q, funcs, combine, r2, n2);
    last_delta = std::abs(cur.mean - prev.mean);
    prev = std::move(cur);
    radial = r2;
    angular = n2;
    if (last_delta <= pol.rel_tol * std::max(std::abs(prev.mean), kEpsFloor)) {
      converged = true;
      break;
    }
  }
  return {prev.mean,   converged,
          last_delta,  q == 1.0 ? 1 : radial,
          angular,     std::move(prev.min_abs),
          std::move(prev.max_abs)};
}

GapReport finish_report(InequalityId id, double lhs, double rhs,
                        double tol_extra, const EvalContext& ctx,
                        GapDiagnostics diag) {
  GapReport rep;
  rep.id = id;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.gap = rhs - lhs;
  if (lhs == 0.0 && rhs == 0.0) {
    rep.ratio = 0.0;
  } else if (rhs == 0.0) {
    rep.ratio = std::numeric_limits<double>::max();  // keeps reports finite
  } else {
    rep.ratio = lhs / rhs;
  }
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  rep.tolerance = ctx.tolerances.violation_base + tol_extra + 1e-14 * scale;
  rep.equality_tolerance = ctx.tolerances.equality_rel * scale + rep.tolerance;
  if (rep.gap < -rep.tolerance) {
    rep.verdict = Verdict::kViolated;
  } else if (std::abs(rep.gap) <= rep.equality_tolerance) {
    rep.verdict = Verdict::kEquality;
  } else {
    rep.verdict = Verdict::kHolds;
  }
  rep.diagnostics = std::move(diag);
  return rep;
}

std::string describe(const char* fmt, ...) {
  char buf[160];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

int max_degree_of(const PolySeries& f) {
  int d = 0;
  for (int v : f.max_degree()) d = std::max(d, v);
  return d;
}

// sqrt(alpha! / (q)_alpha) can exceed 1 when an axis weight sits below
// one; this bounds the growth over all multi-indices up to the cap.
double hq_weight_growth(const WeightVector& q, const std::vector<int>& deg) {
  double growth = 1.0;
  for (int j = 0; j < q.dim(); ++j) {
    const double qj = q[j];
    if (qj >= 1.0) continue;
    const double k = static_cast<double>(deg[static_cast<std::size_t>(j)]) + 1.0;
    growth *= std::exp((1.0 - qj) / (2.0 * qj)) * std::pow(k, (1.0 - qj) / 2.0);
  }
  return growth;
}

void check_product_inputs(std::span<const PolySeries> f, std::span<const double> p,
                          const char* who) {
  if (f.size() < 2) throw DomainError(std::string(who) + ": needs at least two functions");
  if (p.size() != f.size()) {
    throw DimensionError(std::string(who) + ": one exponent per function required");
  }
  const int n = f[0].dim();
  for (const PolySeries& fn : f) {
    if (fn.dim() != n) throw DimensionError(std::string(who) + ": mixed dimensions");
  }
  for (double pj : p) {
    if (!(pj > 0.0) || !std::isfinite(pj)) {
      throw DomainError(std::string(who) + ": exponents must be positive and finite");
    }
  }
}

GapReport product_mean_gap(InequalityId id, std::span<const PolySeries> f,
                           std::span<const double> p, const EvalContext& ctx,
                           std::string description) {
  const int m = static_cast<int>(f.size());
  const int n = f[0].dim();
  const double q = static_cast<double>(m);

  std::vector<int> halves(f.size(), 0);
  bool all_even = true;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (is_even_integer_exponent(p[j])) {
      halves[j] = static_cast<int>(std::round(p[j] / 2.0));
    } else {
      all_even = false;
    }
  }

  std::optional<std::pair<int, int>> exact;
  if (all_even) {
    int radial_degree = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      radial_degree += halves[j] * max_degree_of(f[j]);
    }
    exact = std::make_pair(radial_degree + 1, 2 * radial_degree + 1);
  }

  auto combine = [&](std::span<const double> a) {
    double v = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      v *= abs_pow(a[j], p[j], halves[j]);
    }
    return v;
  };
  const DiscEstimate lhs_est = disc_adaptive(n, q, f, combine, ctx.disc, exact);
  const double lhs = lhs_est.value;

  // rhs = prod ||f_j||_{p_j}^{p_j}; the detailed estimates expose the
  // integral-level doubling deltas for the tolerance budget.
  std::vector<double> integral(f.size(), 0.0);
  std::vector<double> integral_delta(f.size(), 0.0);
  bool rhs_converged = true;
  double rhs = 1.0;
  std::vector<double> norm_value(f.size(), 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const ValueEstimate est = hardy_norm_detailed(f[j], p[j], ctx.torus);
    norm_value[j] = est.value;
    integral[j] = std::pow(est.value, p[j]);
    integral_delta[j] = est.last_delta;
    rhs_converged = rhs_converged && est.converged;
    rhs *= integral[j];
  }

  double rhs_quad = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    double others = 1.0;
    for (std::size_t l = 0; l < f.size(); ++l) {
      if (l != j) others *= integral[l];
    }
    rhs_quad += integral_delta[j] * others;
  }

  // Certified input tails perturb both sides; grid extrema stand in for
  // the modulus range in the power-map bound.
  double lhs_tail = 0.0;
  double rhs_tail = 0.0;
  double tail_total = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double tau = f[j].tail_bound();
    tail_total += tau;
    if (tau <= 0.0) continue;
    double others_sup = 1.0;
    double others_int = 1.0;
    for (std::size_t l = 0; l < f.size(); ++l) {
      if (l == j) continue;
      const double sup_l = f[l].coeff_one_norm() + f[l].tail_bound();
      others_sup *= std::pow(sup_l, p[l]);
      others_int *= integral[l];
    }
    lhs_tail += pow_perturbation(p[j], lhs_est.min_abs[j], lhs_est.max_abs[j], tau) *
                others_sup;
    rhs_tail += pow_perturbation(p[j], norm_value[j], norm_value[j], tau) * others_int;
  }

  GapDiagnostics diag;
  diag.description = std::move(description);
  for (const PolySeries& fn : f) diag.degrees.push_back(max_degree_of(fn));
  diag.tail_bound = tail_total;
  diag.radial_points = lhs_est.radial;
  diag.angular_points = lhs_est.angular;
  diag.quadrature_converged = lhs_est.converged && rhs_converged;
  diag.quadrature_uncertainty = lhs_est.last_delta + rhs_quad;

  const double tol_extra =
      lhs_tail + rhs_tail + 10.0 * (lhs_est.last_delta + rhs_quad);
  return finish_report(id, lhs, rhs, tol_extra, ctx, std::move(diag));
}

}  // namespace

std::string_view inequality_name(InequalityId id) {
  for (const NamedId& e : kIdTable) {
    if (e.id == id) return e.name;
  }
  return "unknown";
}

std::optional<InequalityId> inequality_from_name(std::string_view name) {
  for (const NamedId& e : kIdTable) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kEquality:
      return "equality";
    case Verdict::kViolated:
      return "violated";
  }
  return "unknown";
}

GapReport burbea_hilbert_gap(std::span<const PolySeries> f,
                             std::span<const WeightVector> q,
                             const EvalContext& ctx) {
  if (f.size() < 2) throw DomainError("burbea_hilbert: needs at least two functions");
  if (q.size() != f.size()) {
    throw DimensionError("burbea_hilbert: one weight vector per function required");
  }
  const int n = f[0].dim();
  for (const PolySeries& fn : f) {
    if (fn.dim() != n) throw DimensionError("burbea_hilbert: mixed dimensions");
  }
  for (const WeightVector& qj : q) {
    if (qj.dim() != n) throw DimensionError("burbea_hilbert: weight dimension mismatch");
  }

  WeightVector q_sum = q[0];
  for (std::size_t j = 1; j < q.size(); ++j) q_sum = q_sum + q[j];

  PolySeries prod = f[0];
  for (std::size_t j = 1; j < f.size(); ++j) prod = multiply(prod, f[j]);

  const double lhs = hq_norm_series(prod, q_sum);

  double rhs = 1.0;
  std::vector<double> norms(f.size(), 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    norms[j] = hq_norm_series(f[j], q[j]);
    rhs *= norms[j];
  }

  const double lhs_tail =
      hq_weight_growth(q_sum, prod.max_degree()) * prod.tail_bound();
  double rhs_tail = 0.0;
  double tail_total = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double tau = f[j].tail_bound();
    tail_total += tau;
    if (tau <= 0.0) continue;
    double others = 1.0;
    for (std::size_t l = 0; l < f.size(); ++l) {
      if (l != j) others *= norms[l];
    }
    rhs_tail += hq_weight_growth(q[j], f[j].max_degree()) * tau * others;
  }

  GapDiagnostics diag;
  diag.description = describe("burbea_hilbert m=%d n=%d", static_cast<int>(f.size()), n);
  for (const PolySeries& fn : f) diag.degrees.push_back(max_degree_of(fn));
  diag.tail_bound = tail_total;

  return finish_report(InequalityId::kBurbeaHilbert, lhs, rhs,
                       lhs_tail + rhs_tail, ctx, std::move(diag));
}

GapReport main_product_gap(std::span<const PolySeries> f,
                           std::span<const double> p, const EvalContext& ctx) {
  check_product_inputs(f, p, "main_product");
  return product_mean_gap(
      InequalityId::kMainProduct, f, p, ctx,
      describe("main_product m=%d n=%d", static_cast<int>(f.size()), f[0].dim()));
}

GapReport equal_function_gap(const PolySeries& f, double p, int m,
                             const EvalContext& ctx) {
  if (m < 2) throw DomainError("equal_function: needs m >= 2 copies");
  std::vector<PolySeries> copies(static_cast<std::size_t>(m), f);
  std::vector<double> exps(static_cast<std::size_t>(m), p);
  check_product_inputs(copies, exps, "equal_function");
  return product_mean_gap(InequalityId::kEqualFunction, copies, exps, ctx,
                          describe("equal_function m=%d p=%g n=%d", m, p, f.dim()));
}

GapReport carleman_gap(const PolySeries& f, double p, const EvalContext& ctx) {
  if (f.dim() != 1) throw DimensionError("carleman: needs a one-variable function");
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("carleman: p must be positive and finite");
  }

  const double two_p = 2.0 * p;
  const int even_half =
      is_even_integer_exponent(two_p) ? static_cast<int>(std::round(p)) : 0;
  std::optional<std::pair<int, int>> exact;
  if (even_half > 0) {
    const int radial_degree = even_half * max_degree_of(f);
    exact = std::make_pair(radial_degree + 1, 2 * radial_degree + 1);
  }
  auto combine = [&](std::span<const double> a) {
    return abs_pow(a[0], two_p, even_half);
  };
  const std::span<const PolySeries> fs(&f, 1);
  const DiscEstimate area_est = disc_adaptive(1, 2.0, fs, combine, ctx.disc, exact);

  const ValueEstimate boundary = hardy_norm_detailed(f, p, ctx.torus);
  const double boundary_integral = std::pow(boundary.value, p);

  // Unnormalized sides: 4 pi int_U ... dA with dA of total mass pi, and
  // the squared arclength integral 2 pi times the boundary mean.
  const double four_pi_sq = 4.0 * kPi * kPi;
  const double lhs = four_pi_sq * area_est.value;
  const double rhs = four_pi_sq * boundary_integral * boundary_integral;

  const double tau = f.tail_bound();
  const double lhs_tail =
      four_pi_sq *
      pow_perturbation(two_p, area_est.min_abs[0], area_est.max_abs[0], tau);
  const double boundary_err =
      pow_perturbation(p, boundary.value, boundary.value, tau) + boundary.last_delta;
  const double rhs_tail =
      four_pi_sq * 2.0 * (boundary_integral + boundary_err) * boundary_err;

  GapDiagnostics diag;
  diag.description = describe("carleman p=%g", p);
  diag.degrees.push_back(max_degree_of(f));
  diag.tail_bound = tau;
  diag.radial_points = area_est.radial;
  diag.angular_points = area_est.angular;
  diag.quadrature_converged = area_est.converged && boundary.converged;
  diag.quadrature_uncertainty = four_pi_sq * (area_est.last_delta + boundary_err);

  // Independent path: the same sides through the m = 2 equal-function
  // machinery, after removing the 4 pi^2 normalization.
  const GapReport twin = equal_function_gap(f, p, 2, ctx);
  const double lhs_ref = four_pi_sq * twin.lhs;
  const double rhs_ref = four_pi_sq * twin.rhs;
  const double lhs_rel =
      std::abs(lhs - lhs_ref) / std::max({std::abs(lhs), std::abs(lhs_ref), kEpsFloor});
  const double rhs_rel =
      std::abs(rhs - rhs_ref) / std::max({std::abs(rhs), std::abs(rhs_ref), kEpsFloor});
  diag.cross_check_delta = std::max(lhs_rel, rhs_rel);

  const double tol_extra = lhs_tail + rhs_tail +
                           10.0 * four_pi_sq * (area_est.last_delta + boundary_err);
  return finish_report(InequalityId::kCarleman, lhs, rhs, tol_extra, ctx,
                       std::move(diag));
}

GapReport carleman_double_gap(const PolySeries& f1, const PolySeries& f2,
                              const EvalContext& ctx) {
  if (f1.dim() != 1 || f2.dim() != 1) {
    throw DimensionError("carleman_double: needs one-variable functions");
  }
  const PolySeries funcs[] = {f1, f2};
  const double exps[] = {1.0, 1.0};
  GapReport rep = product_mean_gap(InequalityId::kCarlemanDouble, funcs, exps, ctx,
                                   "carleman_double");
  const double four_pi_sq = 4.0 * kPi * kPi;
  return finish_report(InequalityId::kCarlemanDouble, four_pi_sq * rep.lhs,
                       four_pi_sq * rep.rhs,
                       four_pi_sq * (rep.tolerance - ctx.tolerances.violation_base),
                       ctx, std::move(rep.diagnostics));
}

GapReport isoperimetric_check(const PolySeries& derivative_series,
                              const EvalContext& ctx) {
  const PolySeries& fp = derivative_series;
  if (fp.dim() != 1) throw DimensionError("isoperimetric: needs a one-variable map");

  // 4 pi Area <= Length^2 via Carleman with |f'|: Area is the
  // area-counting integral of |f'|^2 (exact rule), Length the boundary
  // integral of |f'|.
  const int radial_degree = max_degree_of(fp);
  auto combine = [](std::span<const double> a) { return a[0] * a[0]; };
  const std::span<const PolySeries> fs(&fp, 1);
  const DiscEstimate area_est =
      disc_adaptive(1, 2.0, fs, combine, ctx.disc,
                    std::make_pair(radial_degree + 1, 2 * radial_degree + 1));

  const ValueEstimate length_est = hardy_norm_detailed(fp, 1.0, ctx.torus);
  const double length = 2.0 * kPi * length_est.value;

  const double lhs = 4.0 * kPi * (kPi * area_est.value);
  const double rhs = length * length;

  GapDiagnostics diag;
  diag.description = "isoperimetric analytic";
  diag.degrees.push_back(radial_degree + 1);
  diag.radial_points = area_est.radial;
  diag.angular_points = area_est.angular;
  diag.quadrature_converged = area_est.converged && length_est.converged;
  const double length_err = 2.0 * kPi * length_est.last_delta;
  diag.quadrature_uncertainty =
      4.0 * kPi * kPi * area_est.last_delta + 2.0 * length * length_err;

  const double tol_extra = 10.0 * diag.quadrature_uncertainty;
  return finish_report(InequalityId::kIsoperimetric, lhs, rhs, tol_extra, ctx,
                       std::move(diag));
}

GapReport isoperimetric_analytic(const PolySeries& f, const EvalContext& ctx) {
  if (f.dim() != 1) throw DimensionError("isoperimetric: needs a one-variable map");
  return isoperimetric_check(derivative(f, 0), ctx);
}

GapReport isoperimetric_check(std::span<const Complex> curve,
                              const EvalContext& ctx) {
  return isoperimetric_sampled(curve, ctx);
}

GapReport isoperimetric_sampled(std::span<const Complex> curve,
                                const EvalContext& ctx) {
  if (curve.size() < 3) {
    throw DomainError("isoperimetric: a sampled curve needs at least 3 vertices");
  }
  for (const Complex& zv : curve) {
    if (!std::isfinite(zv.real()) || !std::isfinite(zv.imag())) {
      throw DomainError("isoperimetric: non-finite curve vertex");
    }
  }

  double twice_area = 0.0;
  double length = 0.0;
  const std::size_t k = curve.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Complex& a = curve[i];
    const Complex& b = curve[(i + 1) % k];
    twice_area += a.real() * b.imag() - b.real() * a.imag();
    length += std::abs(b - a);
  }
  const double area = 0.5 * std::abs(twice_area);

  const double lhs = 4.0 * kPi * area;
  const double rhs = length * length;

  GapDiagnostics diag;
  diag.description = describe("isoperimetric sampled, %d vertices",
                              static_cast<int>(curve.size()));
  return finish_report(InequalityId::kIsoperimetric, lhs, rhs, 0.0, ctx,
                       std::move(diag));
}

double LogSubRepresentative::eval(Complex z) const {
  double sum = 0.0;
  for (const PolySeries& term : terms) sum += std::abs(term.eval(z));
  return sum;
}

GapReport logsub_gap(std::span<const LogSubRepresentative> u, double mu_q,
                     const EvalContext& ctx) {
  if (u.empty()) throw DomainError("logsub: needs at least one representative");
  if (!(mu_q >= 1.0) || !std::isfinite(mu_q)) {
    throw DomainError("logsub: measure parameter must satisfy q >= 1");
  }
  std::vector<PolySeries> flat;
  std::vector<std::size_t> offsets;
  for (const LogSubRepresentative& rep : u) {
    if (rep.terms.empty()) throw DomainError("logsub: empty representative");
    offsets.push_back(flat.size());
    for (const PolySeries& term : rep.terms) {
      if (term.dim() != 1) {
        throw DimensionError("logsub: representatives live on the unit disc");
      }
      flat.push_back(term);
    }
  }
  offsets.push_back(flat.size());

  auto combine = [&](std::span<const double> a) {
    double v = 1.0;
    for (std::size_t j = 0; j + 1 < offsets.size(); ++j) {
      double s = 0.0;
      for (std::size_t t = offsets[j]; t < offsets[j + 1]; ++t) s += a[t];
      v *= s;
    }
    return v;
  };
  const DiscEstimate lhs_est = disc_adaptive(1, mu_q, flat, combine, ctx.disc);

  // Boundary means reuse the same machinery with the q = 1 rule.
  auto sum_combine = [](std::span<const double> a) {
    double s = 0.0;
    for (double t : a) s += t;
    return s;
  };
  double rhs = 1.0;
  bool rhs_converged = true;
  std::vector<double> means(u.size(), 0.0);
  std::vector<double> mean_delta(u.size(), 0.0);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const DiscEstimate est =
        disc_adaptive(1, 1.0, u[j].terms, sum_combine, ctx.disc);
    means[j] = est.value;
    mean_delta[j] = est.last_delta;
    rhs_converged = rhs_converged && est.converged;
    rhs *= est.value;
  }
  double rhs_delta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    double others = 1.0;
    for (std::size_t l = 0; l < u.size(); ++l) {
      if (l != j) others *= means[l];
    }
    rhs_delta += mean_delta[j] * others;
  }

  double tail_total = 0.0;
  std::vector<double> sup(u.size(), 0.0);
  std::vector<double> tail(u.size(), 0.0);
  for (std::size_t j = 0; j < u.size(); ++j) {
    for (const PolySeries& term : u[j].terms) {
      sup[j] += term.coeff_one_norm() + term.tail_bound();
      tail[j] += term.tail_bound();
    }
    tail_total += tail[j];
  }
  double tail_extra = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (tail[j] <= 0.0) continue;
    double others = 1.0;
    for (std::size_t l = 0; l < u.size(); ++l) {
      if (l != j) others *= sup[l];
    }
    tail_extra += 2.0 * tail[j] * others;  // both sides move by at most this
  }

  const int m = static_cast<int>(u.size());
  const bool certified = std::abs(mu_q - static_cast<double>(m)) < 1e-12;

  GapDiagnostics diag;
  diag.description = describe("logsub m=%d q=%g", m, mu_q);
  for (const LogSubRepresentative& rep : u) {
    int d = 0;
    for (const PolySeries& term : rep.terms) d = std::max(d, max_degree_of(term));
    diag.degrees.push_back(d);
  }
  diag.tail_bound = tail_total;
  diag.radial_points = lhs_est.radial;
  diag.angular_points = lhs_est.angular;
  diag.quadrature_converged = lhs_est.converged && rhs_converged;
  diag.quadrature_uncertainty = lhs_est.last_delta + rhs_delta;
  diag.certified = certified;
  diag.label = certified ? "certified" : "uncertified-(†)";

  const double tol_extra = tail_extra + 10.0 * (lhs_est.last_delta + rhs_delta);
  return finish_report(InequalityId::kLogSub, lhs_est.value, rhs, tol_extra, ctx,
                       std::move(diag));
}

PhiFunction phi_product() {
  return {"product", [](std::span<const double> x) {
            double v = 1.0;
            for (double t : x) v *= t;
            return v;
          }};
}

PhiFunction phi_min() {
  return {"min", [](std::span<const double> x) {
            double v = std::numeric_limits<double>::infinity();
            for (double t : x) v = std::min(v, t);
            return x.empty() ? 0.0 : v;
          }};
}

PhiFunction phi_product_power(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("phi_product_power: exponent must be positive and finite");
  }
  char name[48];
  std::snprintf(name, sizeof(name), "powprod:%g", s);
  return {name, [s](std::span<const double> x) {
            double v = 1.0;
            for (double t : x) v *= t;
            return std::pow(v, s);
          }};
}

namespace {

// Spot-checks the Phi contract: finite non-negative values,
// non-decreasing in every argument, zero whenever an argument is zero.
void probe_phi(const PhiFunction& phi, std::size_t arity) {
  if (!phi.fn) throw DomainError("phi_main: empty Phi");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<double> x(arity), y(arity);
  for (int trial = 0; trial < 32; ++trial) {
    for (std::size_t j = 0; j < arity; ++j) x[j] = 1e-6 + 2.0 * unit();
    const double base = phi.fn(x);
    if (!std::isfinite(base) || base < -1e-12) {
      throw DomainError("phi_main: Phi must be finite and non-negative");
    }
    for (std::size_t j = 0; j < arity; ++j) {
      y = x;
      y[j] += 0.25;
      const double up = phi.fn(y);
      if (!(up >= base - 1e-9 * std::max(1.0, std::abs(base)))) {
        throw DomainError("phi_main: Phi must be non-decreasing in each argument");
      }
      y = x;
      y[j] = 0.0;
      const double zero = phi.fn(y);
      if (!(std::abs(zero) <= 1e-12 * std::max(1.0, std::abs(base)))) {
        throw DomainError("phi_main: Phi must vanish when an argument vanishes");
      }
    }
  }
}

}  // namespace

GapReport phi_main_gap(std::span<const PolySeries> f, std::span<const double> p,
                       const PhiFunction& phi, double mu_q,
                       const EvalContext& ctx) {
  if (f.empty()) throw DomainError("phi_main: needs at least one function");
  if (p.size() != f.size()) {
    throw DimensionError("phi_main: one exponent per function required");
  }
  if (!(mu_q >= 1.0) || !std::isfinite(mu_q)) {
    throw DomainError("phi_main: measure parameter must satisfy q >= 1");
  }
  const int n = f[0].dim();
  for (const PolySeries& fn : f) {
    if (fn.dim() != n) throw DimensionError("phi_main: mixed dimensions");
  }
  for (double pj : p) {
    if (!(pj > 0.0) || !std::isfinite(pj)) {
      throw DomainError("phi_main: exponents must be positive and finite");
    }
  }
  probe_phi(phi, f.size());

  std::vector<int> halves(f.size(), 0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (is_even_integer_exponent(p[j])) {
      halves[j] = static_cast<int>(std::round(p[j] / 2.0));
    }
  }
  std::vector<double> args(f.size());
  auto combine = [&](std::span<const double> a) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      args[j] = abs_pow(a[j], p[j], halves[j]);
    }
    return phi.fn(args);
  };
  const DiscEstimate lhs_est = disc_adaptive(n, mu_q, f, combine, ctx.disc);

  std::vector<double> integral(f.size(), 0.0);
  std::vector<double> integral_err(f.size(), 0.0);
  bool rhs_converged = true;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const ValueEstimate est = hardy_norm_detailed(f[j], p[j], ctx.torus);
    integral[j] = std::pow(est.value, p[j]);
    integral_err[j] =
        est.last_delta + pow_perturbation(p[j], est.value, est.value, f[j].tail_bound());
    rhs_converged = rhs_converged && est.converged;
  }
  const double rhs = phi.fn(integral);
  if (!std::isfinite(rhs)) {
    throw NumericalError("phi_main: Phi produced a non-finite right side");
  }

  // Phi has no stated Lipschitz data, so the norm-side sensitivity is
  // measured by direct re-evaluation at perturbed arguments.
  double rhs_err = 0.0;
  std::vector<double> bumped(integral);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (integral_err[j] <= 0.0) continue;
    bumped = integral;
    bumped[j] += integral_err[j];
    rhs_err += std::abs(phi.fn(bumped) - rhs);
  }

  double tail_total = 0.0;
  for (const PolySeries& fn : f) tail_total += fn.tail_bound();
  double lhs_tail = 0.0;
  if (tail_total > 0.0) {
    std::vector<double> sup_args(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      sup_args[j] =
          std::pow(f[j].coeff_one_norm() + f[j].tail_bound(), p[j]);
    }
    const double at_sup = phi.fn(sup_args);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double tau = f[j].tail_bound();
      if (tau <= 0.0) continue;
      bumped = sup_args;
      bumped[j] += pow_perturbation(p[j], lhs_est.min_abs[j], lhs_est.max_abs[j], tau);
      lhs_tail += std::abs(phi.fn(bumped) - at_sup);
    }
  }

  const int m = static_cast<int>(f.size());
  const bool certified = phi.name == "product" &&
                         std::abs(mu_q - static_cast<double>(m)) < 1e-12;

  GapDiagnostics diag;
  diag.description = describe("phi_main Phi=%s m=%d q=%g", phi.name.c_str(), m, mu_q);
  for (const PolySeries& fn : f) diag.degrees.push_back(max_degree_of(fn));
  diag.tail_bound = tail_total;
  diag.radial_points = lhs_est.radial;
  diag.angular_points = lhs_est.angular;
  diag.quadrature_converged = lhs_est.converged && rhs_converged;
  diag.quadrature_uncertainty = lhs_est.last_delta + rhs_err;
  diag.certified = certified;
  diag.label = certified ? "certified" : "uncertified-(†)";

  const double tol_extra = lhs_tail + 10.0 * (lhs_est.last_delta + rhs_err);
  return finish_report(InequalityId::kPhiMain, lhs_est.value, rhs, tol_extra, ctx,
                       std::move(diag));
}

}  // namespace polyineq
