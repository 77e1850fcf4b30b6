#include "polyineq/extremal_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

#include "polyineq/errors.hpp"
#include "polyineq/kernels.hpp"

namespace polyineq {

namespace {

constexpr int kRestarts = 5;
constexpr double kPenalty = 1e300;  // objective value for rejected points

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SearchProblem normalize_problem(SearchProblem problem) {
  if (problem.n < 1) throw DomainError("search: dimension must be >= 1");
  switch (problem.id) {
    case InequalityId::kCarleman:
    case InequalityId::kIsoperimetric:
      problem.n = 1;
      break;
    case InequalityId::kCarlemanDouble:
      problem.n = 1;
      problem.m = 2;
      problem.p = {1.0, 1.0};
      break;
    case InequalityId::kLogSub:
      problem.n = 1;
      break;
    default:
      break;
  }
  if (problem.m < 1) throw DomainError("search: m must be >= 1");
  const std::size_t want_p =
      (problem.id == InequalityId::kCarleman || problem.id == InequalityId::kEqualFunction)
          ? 1
          : static_cast<std::size_t>(problem.m);
  if (problem.p.empty()) {
    problem.p.assign(want_p, 2.0);
  }
  if (problem.id != InequalityId::kIsoperimetric && problem.p.size() != want_p) {
    throw DimensionError("search: exponent count does not match the problem");
  }
  if (problem.id == InequalityId::kBurbeaHilbert && problem.q.empty()) {
    problem.q.assign(static_cast<std::size_t>(problem.m), WeightVector(1.0, problem.n));
  }
  if (problem.mu_q <= 0.0) problem.mu_q = static_cast<double>(problem.m);
  return problem;
}

int decoded_functions(const SearchProblem& problem) {
  switch (problem.id) {
    case InequalityId::kCarleman:
    case InequalityId::kEqualFunction:
    case InequalityId::kIsoperimetric:
      return 1;
    default:
      return problem.m;
  }
}

// z * K_w truncation: the antiderivative of the squared kernel, the
// degree-one extremal map for the isoperimetric check.
PolySeries moebius_like_map(Complex w, double tail_tol) {
  const PolySeries k = kernel_series(WeightVector(1.0, 1),
                                     std::span<const Complex>(&w, 1), tail_tol);
  PolySeries z = PolySeries::monomial(MultiIndex(std::vector<int>{1}));
  PolySeries map = multiply(k, z);
  // The family member is the truncated polynomial itself, not an
  // approximation of the ideal map, so no tail survives. A tail bound
  // here would also block differentiation in the perimeter functional.
  map.set_tail_bound(0.0);
  return map;
}

std::vector<PolySeries> decode_kernel_tuple(const SearchProblem& problem,
                                            std::span<const Complex> w,
                                            double tail_tol) {
  std::vector<PolySeries> tuple;
  switch (problem.id) {
    case InequalityId::kBurbeaHilbert:
      for (int j = 0; j < problem.m; ++j) {
        tuple.push_back(kernel_series(problem.q[static_cast<std::size_t>(j)], w, tail_tol));
      }
      break;
    case InequalityId::kMainProduct:
    case InequalityId::kPhiMain:
      for (int j = 0; j < problem.m; ++j) {
        tuple.push_back(extremal_hardy_power(problem.p[static_cast<std::size_t>(j)],
                                             problem.n, w, tail_tol));
      }
      break;
    case InequalityId::kEqualFunction:
    case InequalityId::kCarleman:
      tuple.push_back(extremal_hardy_power(problem.p[0], problem.n, w, tail_tol));
      break;
    case InequalityId::kCarlemanDouble:
    case InequalityId::kLogSub:
      // p = 1 extremals: squared kernels.
      for (int j = 0; j < problem.m; ++j) {
        tuple.push_back(extremal_hardy_power(1.0, problem.n, w, tail_tol));
      }
      break;
    case InequalityId::kIsoperimetric:
      tuple.push_back(moebius_like_map(w[0], tail_tol));
      break;
  }
  return tuple;
}

}  // namespace

SearchSpace SearchSpace::coefficient_ball(SearchProblem problem, int degree,
                                          double norm_cap) {
  if (degree < 0) throw DomainError("search: degree cap must be >= 0");
  if (!(norm_cap > 0.0)) throw DomainError("search: norm cap must be positive");
  SearchSpace space;
  space.family_ = Family::kCoefficientBall;
  space.problem_ = normalize_problem(std::move(problem));
  space.degree_ = degree;
  space.norm_cap_ = norm_cap;
  return space;
}

SearchSpace SearchSpace::kernel_family(SearchProblem problem, double rho,
                                       double tail_tol) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw DomainError("search: kernel family radius must lie in (0,1)");
  }
  if (!(tail_tol > 0.0)) throw DomainError("search: tail tolerance must be positive");
  SearchSpace space;
  space.family_ = Family::kKernelFamily;
  space.problem_ = normalize_problem(std::move(problem));
  space.rho_ = rho;
  space.tail_tol_ = tail_tol;
  return space;
}

int SearchSpace::function_count() const { return decoded_functions(problem_); }

int SearchSpace::parameter_count() const {
  if (family_ == Family::kKernelFamily) return 2 * problem_.n;
  std::size_t box = 1;
  for (int j = 0; j < problem_.n; ++j) box *= static_cast<std::size_t>(degree_) + 1;
  return function_count() * 2 * static_cast<int>(box);
}

std::optional<std::vector<PolySeries>> SearchSpace::decode(
    std::span<const double> params) const {
  if (static_cast<int>(params.size()) != parameter_count()) {
    throw DimensionError("search: parameter vector has the wrong length");
  }
  for (double v : params) {
    if (!std::isfinite(v)) return std::nullopt;
  }

  if (family_ == Family::kKernelFamily) {
    std::vector<Complex> w(static_cast<std::size_t>(problem_.n));
    for (int j = 0; j < problem_.n; ++j) {
      w[static_cast<std::size_t>(j)] =
          Complex(params[static_cast<std::size_t>(2 * j)],
                  params[static_cast<std::size_t>(2 * j + 1)]);
      if (std::abs(w[static_cast<std::size_t>(j)]) > rho_) return std::nullopt;
    }
    try {
      return decode_kernel_tuple(problem_, w, tail_tol_);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  const int funcs = function_count();
  std::vector<int> cap(static_cast<std::size_t>(problem_.n), degree_);
  std::vector<PolySeries> tuple;
  tuple.reserve(static_cast<std::size_t>(funcs));
  std::size_t at = 0;
  for (int j = 0; j < funcs; ++j) {
    PolySeries f(problem_.n, cap);
    std::vector<int> idx(static_cast<std::size_t>(problem_.n), 0);
    while (true) {
      const Complex c(params[at], params[at + 1]);
      at += 2;
      if (c != Complex(0.0, 0.0)) f.set_coeff(MultiIndex(idx), c);
      int axis = problem_.n - 1;
      while (axis >= 0) {
        auto au = static_cast<std::size_t>(axis);
        if (++idx[au] <= degree_) break;
        idx[au] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
    if (f.is_zero()) return std::nullopt;
    if (f.coeff_two_norm() > norm_cap_) return std::nullopt;
    tuple.push_back(std::move(f));
  }
  return tuple;
}

std::vector<PolySeries> extremal_tuple(const SearchProblem& raw,
                                       std::span<const Complex> w,
                                       double tail_tol) {
  const SearchProblem problem = normalize_problem(raw);
  if (static_cast<int>(w.size()) != problem.n) {
    throw DimensionError("extremal_tuple: point dimension mismatch");
  }
  if (!(tail_tol > 0.0)) throw DomainError("extremal_tuple: tail tolerance must be positive");
  return decode_kernel_tuple(problem, w, tail_tol);
}

double inequality_ratio(const SearchProblem& raw,
                        std::span<const PolySeries> tuple,
                        const EvalContext& ctx) {
  const SearchProblem problem = normalize_problem(raw);
  if (static_cast<int>(tuple.size()) != decoded_functions(problem)) {
    throw DimensionError("inequality_ratio: tuple size does not match the problem");
  }
  switch (problem.id) {
    case InequalityId::kBurbeaHilbert:
      return burbea_hilbert_gap(tuple, problem.q, ctx).ratio;
    case InequalityId::kMainProduct:
      return main_product_gap(tuple, problem.p, ctx).ratio;
    case InequalityId::kEqualFunction:
      return equal_function_gap(tuple[0], problem.p[0], problem.m, ctx).ratio;
    case InequalityId::kCarleman:
      return carleman_gap(tuple[0], problem.p[0], ctx).ratio;
    case InequalityId::kCarlemanDouble:
      return carleman_double_gap(tuple[0], tuple[1], ctx).ratio;
    case InequalityId::kIsoperimetric:
      return isoperimetric_analytic(tuple[0], ctx).ratio;
    case InequalityId::kLogSub: {
      std::vector<LogSubRepresentative> reps;
      reps.reserve(tuple.size());
      for (const PolySeries& f : tuple) reps.push_back({{f}});
      return logsub_gap(reps, problem.mu_q, ctx).ratio;
    }
    case InequalityId::kPhiMain:
      return phi_main_gap(tuple, problem.p, phi_product(), problem.mu_q, ctx).ratio;
  }
  throw DomainError("inequality_ratio: unknown inequality");
}

namespace {

struct Objective {
  const SearchSpace& space;
  const EvalContext& ctx;
  long long evaluations = 0;
  long long rejections = 0;

  // Negated ratio (the ascent runs as a minimization); rejections and
  // evaluation failures get a flat penalty so the simplex backs off.
  double operator()(std::span<const double> params) {
    ++evaluations;
    const auto tuple = space.decode(params);
    if (!tuple) {
      ++rejections;
      return kPenalty;
    }
    try {
      return -inequality_ratio(space.problem(), *tuple, ctx);
    } catch (const Error&) {
      ++rejections;
      return kPenalty;
    }
  }
};

struct SimplexOutcome {
  double best_value = kPenalty;  // negated ratio
  std::vector<double> best_point;
  bool converged = false;
};

// One Nelder-Mead run (minimization) with a hard evaluation slice.
SimplexOutcome nelder_mead(Objective& objective, std::span<const double> start,
                           double step, long long eval_slice) {
  const std::size_t d = start.size();
  const long long start_evals = objective.evaluations;
  auto spent = [&]() { return objective.evaluations - start_evals; };

  std::vector<std::vector<double>> x(d + 1, std::vector<double>(start.begin(), start.end()));
  std::vector<double> h(d + 1);
  for (std::size_t i = 1; i <= d; ++i) x[i][i - 1] += step;
  for (std::size_t i = 0; i <= d && spent() < eval_slice; ++i) h[i] = objective(x[i]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), xr(d), xe(d), xc(d);
  SimplexOutcome out;
  while (spent() + 2 <= eval_slice) {
    for (std::size_t i = 0; i <= d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return h[a] < h[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[d];
    const std::size_t second = order[d - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        diameter = std::max(diameter, std::abs(x[i][k] - x[best][k]));
      }
    }
    if (diameter < 1e-9 &&
        std::abs(h[worst] - h[best]) <= 1e-12 * std::max(1.0, std::abs(h[best]))) {
      out.converged = true;
      break;
    }

    for (std::size_t k = 0; k < d; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i <= d; ++i) {
        if (i != worst) s += x[i][k];
      }
      centroid[k] = s / static_cast<double>(d);
      xr[k] = centroid[k] + (centroid[k] - x[worst][k]);
    }
    const double hr = objective(xr);
    if (hr < h[best]) {
      for (std::size_t k = 0; k < d; ++k) {
        xe[k] = centroid[k] + 2.0 * (centroid[k] - x[worst][k]);
      }
      const double he = objective(xe);
      if (he < hr) {
        x[worst] = xe;
        h[worst] = he;
      } else {
        x[worst] = xr;
        h[worst] = hr;
      }
      continue;
    }
    if (hr < h[second]) {
      x[worst] = xr;
      h[worst] = hr;
      continue;
    }
    if (hr < h[worst]) {
      for (std::size_t k = 0; k < d; ++k) xc[k] = centroid[k] + 0.5 * (xr[k] - centroid[k]);
      const double hc = objective(xc);
      if (hc <= hr) {
        x[worst] = xc;
        h[worst] = hc;
        continue;
      }
    } else {
      for (std::size_t k = 0; k < d; ++k) xc[k] = centroid[k] - 0.5 * (centroid[k] - x[worst][k]);
      const double hc = objective(xc);
      if (hc < h[worst]) {
        x[worst] = xc;
        h[worst] = hc;
        continue;
      }
    }
    for (std::size_t i = 0; i <= d; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k) {
        x[i][k] = x[best][k] + 0.5 * (x[i][k] - x[best][k]);
      }
      if (spent() >= eval_slice) break;
      h[i] = objective(x[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    if (h[i] < h[best]) best = i;
  }
  out.best_value = h[best];
  out.best_point = x[best];
  return out;
}

}  // namespace

SearchResult maximize_ratio(const SearchSpace& space, long long budget,
                            unsigned long long seed, const EvalContext& ctx) {
  const int d = space.parameter_count();
  if (budget < 50LL * d) {
    throw DomainError("maximize_ratio: budget must be at least 50 per parameter");
  }

  Objective objective{space, ctx};
  const long long slice = budget / kRestarts;

  SearchResult result;
  result.best_ratio = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < kRestarts; ++r) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> start(static_cast<std::size_t>(d));
    double step;
    if (space.family() == SearchSpace::Family::kKernelFamily) {
      const double half = 0.7 * space.rho();
      for (double& v : start) v = half * (2.0 * uniform01(rng) - 1.0);
      step = 0.2 * space.rho();
    } else {
      for (double& v : start) v = 2.0 * uniform01(rng) - 1.0;
      step = 0.25;
    }
    SimplexOutcome outcome = nelder_mead(objective, start, step, slice);
    const double ratio = outcome.best_value >= kPenalty ? -std::numeric_limits<double>::infinity()
                                                        : -outcome.best_value;
    result.restart_best.push_back(ratio);
    if (ratio > result.best_ratio) {
      result.best_ratio = ratio;
      result.best_parameters = std::move(outcome.best_point);
      result.converged = outcome.converged;
    }
  }
  result.evaluations = objective.evaluations;
  result.rejections = objective.rejections;
  if (2 * result.rejections > result.evaluations) {
    throw DomainError("maximize_ratio: decoder rejected more than half of all "
                      "evaluations (degenerate search space)");
  }
  if (!std::isfinite(result.best_ratio)) {
    throw NumericalError("maximize_ratio: no feasible point found");
  }

  const auto tuple = space.decode(result.best_parameters);
  if (tuple) {
    result.nearest_kernel_distance = nearest_kernel_distance(space.problem(), *tuple);
  }
  return result;
}

namespace {

Complex map_inner(const PolySeries& a, const PolySeries& b) {
  // <a, b> over the shared coefficient support (absent entries are 0).
  Complex sum(0.0, 0.0);
  for (const auto& [alpha, c] : a.coeffs()) {
    const Complex other = (b.dim() == a.dim()) ? b.coeff(alpha) : Complex(0.0, 0.0);
    sum += c * std::conj(other);
  }
  return sum;
}

double tuple_distance(const SearchProblem& problem,
                      std::span<const PolySeries> tuple,
                      std::span<const Complex> w, double tail_tol) {
  std::vector<PolySeries> kernels;
  try {
    kernels = decode_kernel_tuple(problem, w, tail_tol);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
  if (kernels.size() != tuple.size()) return std::numeric_limits<double>::infinity();

  double acc = 0.0;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    const double f2 = tuple[j].coeff_two_norm();
    const double k2 = kernels[j].coeff_two_norm();
    if (f2 == 0.0 || k2 == 0.0) return std::numeric_limits<double>::infinity();
    const Complex cross = map_inner(tuple[j], kernels[j]);
    // Residual of the least-squares fit c* = <f,k>/||k||^2.
    double res2 = f2 * f2 - std::norm(cross) / (k2 * k2);
    res2 = std::max(res2, 0.0);
    const double rel = std::sqrt(res2) / f2;
    acc += rel * rel;
  }
  return std::sqrt(acc / static_cast<double>(tuple.size()));
}

}  // namespace

double nearest_kernel_distance(const SearchProblem& raw,
                               std::span<const PolySeries> tuple,
                               double rho, double tail_tol) {
  const SearchProblem problem = normalize_problem(raw);
  if (static_cast<int>(tuple.size()) != decoded_functions(problem)) {
    throw DimensionError("nearest_kernel_distance: tuple size mismatch");
  }
  const int n = problem.n;

  // Coarse polar sweep per axis, then a short simplex refinement on the
  // 2n real parameters of w.
  const int radii = (n == 1) ? 9 : 5;
  const int angles = (n == 1) ? 16 : 8;
  std::vector<Complex> axis_points;
  axis_points.push_back(Complex(0.0, 0.0));
  for (int i = 1; i <= radii; ++i) {
    const double r = rho * static_cast<double>(i) / radii;
    for (int k = 0; k < angles; ++k) {
      const double th = 2.0 * std::numbers::pi * k / angles;
      axis_points.push_back(Complex(r * std::cos(th), r * std::sin(th)));
    }
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<Complex> w(static_cast<std::size_t>(n));
  double best = std::numeric_limits<double>::infinity();
  std::vector<Complex> best_w(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  while (true) {
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = axis_points[idx[static_cast<std::size_t>(j)]];
    const double dist = tuple_distance(problem, tuple, w, tail_tol);
    if (dist < best) {
      best = dist;
      best_w = w;
    }
    int axis = n - 1;
    while (axis >= 0) {
      auto au = static_cast<std::size_t>(axis);
      if (++idx[au] < axis_points.size()) break;
      idx[au] = 0;
      --axis;
    }
    if (axis < 0) break;
  }

  // Local refinement; decoded rejections keep the penalty value.
  struct DistObjective {
    const SearchProblem& problem;
    std::span<const PolySeries> tuple;
    double rho;
    double tail_tol;
    long long used = 0;

    double operator()(std::span<const double> params) {
      ++used;
      const std::size_t n = params.size() / 2;
      std::vector<Complex> w(n);
      for (std::size_t j = 0; j < n; ++j) {
        w[j] = Complex(params[2 * j], params[2 * j + 1]);
        if (std::abs(w[j]) > rho) return kPenalty;
      }
      const double dist = tuple_distance(problem, tuple, w, tail_tol);
      return std::isfinite(dist) ? dist : kPenalty;
    }
  };
  DistObjective dist_obj{problem, tuple, rho, tail_tol};

  std::vector<double> start(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    start[static_cast<std::size_t>(2 * j)] = best_w[static_cast<std::size_t>(j)].real();
    start[static_cast<std::size_t>(2 * j + 1)] = best_w[static_cast<std::size_t>(j)].imag();
  }
  const double step = rho / (2.0 * radii);

  const std::size_t d = start.size();
  std::vector<std::vector<double>> x(d + 1, start);
  std::vector<double> h(d + 1);
  for (std::size_t i = 1; i <= d; ++i) x[i][i - 1] += step;
  for (std::size_t i = 0; i <= d; ++i) h[i] = dist_obj(x[i]);
  std::vector<double> centroid(d), xr(d), xc(d);
  for (int iter = 0; iter < 80; ++iter) {
    std::size_t bi = 0, wi = 0;
    for (std::size_t i = 1; i <= d; ++i) {
      if (h[i] < h[bi]) bi = i;
      if (h[i] > h[wi]) wi = i;
    }
    if (h[wi] - h[bi] < 1e-14) break;
    for (std::size_t k = 0; k < d; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i <= d; ++i) {
        if (i != wi) s += x[i][k];
      }
      centroid[k] = s / static_cast<double>(d);
      xr[k] = 2.0 * centroid[k] - x[wi][k];
    }
    const double hr = dist_obj(xr);
    if (hr < h[wi]) {
      x[wi] = xr;
      h[wi] = hr;
      continue;
    }
    for (std::size_t k = 0; k < d; ++k) xc[k] = 0.5 * (centroid[k] + x[wi][k]);
    const double hc = dist_obj(xc);
    if (hc < h[wi]) {
      x[wi] = xc;
      h[wi] = hc;
    } else {
      for (std::size_t i = 0; i <= d; ++i) {
        if (i == bi) continue;
        for (std::size_t k = 0; k < d; ++k) x[i][k] = 0.5 * (x[bi][k] + x[i][k]);
        h[i] = dist_obj(x[i]);
      }
    }
  }
  for (std::size_t i = 0; i <= d; ++i) best = std::min(best, h[i]);
  return best;
}

std::vector<ProfilePoint> ratio_profile(const SearchSpace& space,
                                        std::span<const double> from,
                                        std::span<const double> to, int samples,
                                        const EvalContext& ctx) {
  if (samples < 2) throw DomainError("ratio_profile: needs at least 2 samples");
  if (static_cast<int>(from.size()) != space.parameter_count() ||
      static_cast<int>(to.size()) != space.parameter_count()) {
    throw DimensionError("ratio_profile: endpoint dimension mismatch");
  }
  std::vector<ProfilePoint> points;
  points.reserve(static_cast<std::size_t>(samples));
  std::vector<double> params(from.size());
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    for (std::size_t k = 0; k < params.size(); ++k) {
      params[k] = (1.0 - t) * from[k] + t * to[k];
    }
    ProfilePoint pt;
    pt.parameter = t;
    const auto tuple = space.decode(params);
    if (tuple) {
      try {
        pt.ratio = inequality_ratio(space.problem(), *tuple, ctx);
        pt.valid = true;
      } catch (const Error&) {
        pt.valid = false;
      }
    }
    points.push_back(pt);
  }
  return points;
}

}  // namespace polyineq
