#include "polyineq/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "polyineq/coefficient_io.hpp"
#include "polyineq/errors.hpp"
#include "polyineq/random_function.hpp"
#include "polyineq/report.hpp"

namespace polyineq {

namespace {

EvalContext make_context(const RunConfig& c) {
  if (!(c.tol >= 0.0)) throw DomainError("config: --tol must be >= 0");
  if (!(c.equality_tol >= 0.0)) throw DomainError("config: --equality-tol must be >= 0");
  if (c.max_doublings < 0) throw DomainError("config: adaptive cap must be >= 0");
  EvalContext ctx;
  ctx.tolerances.violation_base = c.tol;
  ctx.tolerances.equality_rel = c.equality_tol;
  if (c.grid > 0) {
    ctx.torus.initial_points = c.grid;
    ctx.disc.initial_angular = c.grid;
  }
  if (c.radial > 0) ctx.disc.initial_radial = c.radial;
  ctx.disc.max_doublings = c.max_doublings;
  return ctx;
}

std::vector<InequalityId> resolve_ids(const RunConfig& c, bool exactly_one) {
  if (c.inequalities.empty()) {
    throw DomainError("config: --inequality is required for this command");
  }
  if (exactly_one && c.inequalities.size() != 1) {
    throw DomainError("config: this command takes exactly one --inequality");
  }
  std::vector<InequalityId> ids;
  for (const std::string& name : c.inequalities) {
    const auto id = inequality_from_name(name);
    if (!id) throw DomainError("config: unknown inequality '" + name + "'");
    ids.push_back(*id);
  }
  return ids;
}

int ambient_dim(InequalityId id, int n) {
  switch (id) {
    case InequalityId::kCarleman:
    case InequalityId::kCarlemanDouble:
    case InequalityId::kIsoperimetric:
    case InequalityId::kLogSub:
      return 1;
    default:
      return n;
  }
}

int function_count_for(InequalityId id, int m) {
  switch (id) {
    case InequalityId::kCarleman:
    case InequalityId::kEqualFunction:
    case InequalityId::kIsoperimetric:
      return 1;
    case InequalityId::kCarlemanDouble:
      return 2;
    default:
      return m;
  }
}

std::vector<double> exponents_for(const RunConfig& c, InequalityId id) {
  std::size_t want;
  switch (id) {
    case InequalityId::kCarleman:
    case InequalityId::kEqualFunction:
      want = 1;
      break;
    case InequalityId::kIsoperimetric:
      return {};
    case InequalityId::kCarlemanDouble:
      return {1.0, 1.0};
    default:
      want = static_cast<std::size_t>(c.m);
  }
  if (c.p.empty()) return std::vector<double>(want, 2.0);
  if (c.p.size() == 1 && want > 1) return std::vector<double>(want, c.p[0]);
  if (c.p.size() != want) {
    throw DomainError("config: expected " + std::to_string(want) + " exponent(s)");
  }
  return c.p;
}

std::vector<WeightVector> weights_for(const RunConfig& c, int n) {
  std::vector<double> scalars = c.q;
  if (scalars.empty()) scalars.assign(static_cast<std::size_t>(c.m), 1.0);
  if (scalars.size() == 1 && c.m > 1) {
    scalars.assign(static_cast<std::size_t>(c.m), scalars[0]);
  }
  if (scalars.size() != static_cast<std::size_t>(c.m)) {
    throw DomainError("config: expected one --q per function");
  }
  std::vector<WeightVector> weights;
  weights.reserve(scalars.size());
  for (double s : scalars) weights.push_back(WeightVector(s, n));
  return weights;
}

SearchProblem problem_for(const RunConfig& c, InequalityId id) {
  SearchProblem problem;
  problem.id = id;
  problem.n = ambient_dim(id, c.n);
  problem.m = c.m;
  problem.p = exponents_for(c, id);
  if (id == InequalityId::kBurbeaHilbert) problem.q = weights_for(c, problem.n);
  problem.mu_q = c.mu_q;
  return problem;
}

std::vector<Complex> point_for(const RunConfig& c, int n) {
  std::vector<Complex> w(static_cast<std::size_t>(n));
  if (c.w.empty()) {
    for (auto& v : w) v = Complex(0.4, 0.0);
  } else {
    if (c.w.size() != static_cast<std::size_t>(2 * n)) {
      throw DomainError("config: --w needs re and im for each of the " +
                        std::to_string(n) + " axes");
    }
    for (int j = 0; j < n; ++j) {
      w[static_cast<std::size_t>(j)] =
          Complex(c.w[static_cast<std::size_t>(2 * j)],
                  c.w[static_cast<std::size_t>(2 * j + 1)]);
    }
  }
  for (const Complex& v : w) {
    if (!(std::abs(v) < 1.0)) {
      throw DomainError("config: --w must lie strictly inside the polydisc");
    }
  }
  return w;
}

CoefficientLaw law_for(const RunConfig& c) {
  if (c.law == "uniform_disc") return CoefficientLaw::kUniformDisc;
  if (c.law == "gaussian") return CoefficientLaw::kGaussian;
  throw DomainError("config: unknown coefficient law '" + c.law + "'");
}

PhiFunction phi_for(const std::string& name) {
  if (name == "product") return phi_product();
  if (name == "min") return phi_min();
  const std::string prefix = "powprod:";
  if (name.rfind(prefix, 0) == 0) {
    char* end = nullptr;
    const std::string arg = name.substr(prefix.size());
    const double s = std::strtod(arg.c_str(), &end);
    if (end == nullptr || *end != '\0' || arg.empty()) {
      throw DomainError("config: malformed --phi '" + name + "'");
    }
    return phi_product_power(s);
  }
  throw DomainError("config: unknown --phi '" + name + "'");
}

std::vector<PolySeries> random_tuple(const RunConfig& c, InequalityId id,
                                     unsigned long long salt) {
  const int n = ambient_dim(id, c.n);
  const int count = function_count_for(id, c.m);
  std::vector<PolySeries> tuple;
  tuple.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    tuple.push_back(generate_random_function(
        derive_seed(c.seed, salt * 64 + static_cast<unsigned long long>(j)), n,
        c.degree, law_for(c)));
  }
  return tuple;
}

std::vector<PolySeries> loaded_tuple(const RunConfig& c, InequalityId id) {
  const int count = function_count_for(id, c.m);
  if (c.inputs.size() != static_cast<std::size_t>(count)) {
    throw DomainError("config: this inequality needs " + std::to_string(count) +
                      " coefficient file(s)");
  }
  const int n = ambient_dim(id, c.n);
  std::vector<PolySeries> tuple;
  for (const std::string& path : c.inputs) {
    PolySeries f = load_coefficients(path);
    if (f.dim() != n) {
      throw DomainError("config: " + path + " has dimension " +
                        std::to_string(f.dim()) + ", expected " + std::to_string(n));
    }
    tuple.push_back(std::move(f));
  }
  return tuple;
}

GapReport eval_gap(const RunConfig& c, InequalityId id,
                   std::span<const PolySeries> tuple, const EvalContext& ctx) {
  switch (id) {
    case InequalityId::kBurbeaHilbert:
      return burbea_hilbert_gap(tuple, weights_for(c, tuple[0].dim()), ctx);
    case InequalityId::kMainProduct:
      return main_product_gap(tuple, exponents_for(c, id), ctx);
    case InequalityId::kEqualFunction:
      return equal_function_gap(tuple[0], exponents_for(c, id)[0], c.m, ctx);
    case InequalityId::kCarleman:
      return carleman_gap(tuple[0], exponents_for(c, id)[0], ctx);
    case InequalityId::kCarlemanDouble:
      return carleman_double_gap(tuple[0], tuple[1], ctx);
    case InequalityId::kIsoperimetric:
      return isoperimetric_analytic(tuple[0], ctx);
    case InequalityId::kLogSub: {
      std::vector<LogSubRepresentative> reps;
      reps.reserve(tuple.size());
      for (const PolySeries& f : tuple) reps.push_back({{f}});
      const double mu = c.mu_q > 0.0 ? c.mu_q : static_cast<double>(tuple.size());
      return logsub_gap(reps, mu, ctx);
    }
    case InequalityId::kPhiMain: {
      const double mu = c.mu_q > 0.0 ? c.mu_q : static_cast<double>(tuple.size());
      return phi_main_gap(tuple, exponents_for(c, id), phi_for(c.phi), mu, ctx);
    }
  }
  throw DomainError("config: unknown inequality id");
}

void tally(RunReport& report, const GapReport& gap) {
  switch (gap.verdict) {
    case Verdict::kHolds:
      ++report.holds;
      break;
    case Verdict::kEquality:
      ++report.equality;
      break;
    case Verdict::kViolated:
      ++report.violated;
      break;
  }
}

void add_gap_record(RunReport& report, std::string label, GapReport gap) {
  tally(report, gap);
  Record rec;
  rec.kind = Record::Kind::kGap;
  rec.label = std::move(label);
  rec.gap = std::move(gap);
  report.records.push_back(std::move(rec));
}

void run_verify(const RunConfig& c, const EvalContext& ctx, RunReport& report) {
  for (InequalityId id : resolve_ids(c, false)) {
    const std::string name(inequality_name(id));
    if (id == InequalityId::kIsoperimetric && !c.curve_path.empty()) {
      add_gap_record(report, name,
                     isoperimetric_sampled(load_curve(c.curve_path), ctx));
      continue;
    }
    std::vector<PolySeries> tuple;
    if (c.use_extremal) {
      const SearchProblem problem = problem_for(c, id);
      tuple = extremal_tuple(problem, point_for(c, problem.n), c.tail_tol);
    } else if (!c.inputs.empty()) {
      tuple = loaded_tuple(c, id);
    } else {
      tuple = random_tuple(c, id, 0);
    }
    add_gap_record(report, name, eval_gap(c, id, tuple, ctx));
  }
}

void run_sweep(const RunConfig& c, const EvalContext& ctx, RunReport& report) {
  if (c.trials < 1) throw DomainError("config: --trials must be >= 1");
  for (InequalityId id : resolve_ids(c, false)) {
    const std::string name(inequality_name(id));
    for (int t = 0; t < c.trials; ++t) {
      const std::vector<PolySeries> tuple =
          random_tuple(c, id, static_cast<unsigned long long>(t));
      add_gap_record(report, name + " trial " + std::to_string(t),
                     eval_gap(c, id, tuple, ctx));
    }
  }
}

void run_extremal(const RunConfig& c, const EvalContext& ctx, RunReport& report) {
  const InequalityId id = resolve_ids(c, true)[0];
  const SearchProblem problem = problem_for(c, id);
  SearchSpace space = [&]() {
    if (c.family == "coefficient_ball") {
      return SearchSpace::coefficient_ball(problem, c.degree);
    }
    if (c.family == "kernel_family") {
      return SearchSpace::kernel_family(problem, c.rho, c.tail_tol);
    }
    throw DomainError("config: unknown --family '" + c.family + "'");
  }();
  const long long budget =
      c.budget > 0 ? c.budget : 300LL * space.parameter_count();

  Record rec;
  rec.kind = Record::Kind::kSearch;
  rec.label = std::string(inequality_name(id));
  rec.search = maximize_ratio(space, budget, c.seed, ctx);
  report.records.push_back(std::move(rec));

  const auto best = space.decode(report.records.back().search.best_parameters);
  if (best) {
    add_gap_record(report, std::string(inequality_name(id)) + " best",
                   eval_gap(c, id, *best, ctx));
  }
}

void run_factor(const RunConfig& c, const EvalContext& ctx, RunReport& report) {
  if (c.inputs.size() != 1) {
    throw DomainError("config: factor needs exactly one --in coefficient file");
  }
  const PolySeries f = load_coefficients(c.inputs[0]);
  if (f.dim() != 1) throw DomainError("config: factor needs a one-variable polynomial");
  const double p = c.p.empty() ? 2.0 : c.p[0];

  Record rec;
  rec.kind = Record::Kind::kFactor;
  rec.label = c.inputs[0];
  rec.factor_p = p;
  rec.factor_roots = polynomial_roots(f);
  rec.factor = riesz_factorize(f, p, 1e-9, ctx.torus);
  report.records.push_back(std::move(rec));
}

void run_norms(const RunConfig& c, const EvalContext& ctx, RunReport& report) {
  (void)ctx;
  PolySeries f = c.inputs.empty()
                     ? generate_random_function(c.seed, c.n, c.degree, law_for(c))
                     : load_coefficients(c.inputs[0]);
  if (c.inputs.size() > 1) {
    throw DomainError("config: norms takes at most one --in file");
  }
  const double q_scalar = c.q.empty() ? 2.0 : c.q[0];

  Record rec;
  rec.kind = Record::Kind::kNorm;
  rec.label = c.inputs.empty() ? "random" : c.inputs[0];
  rec.norm = hq_norm_report(f, WeightVector(q_scalar, f.dim()), c.radial, c.grid);
  report.records.push_back(std::move(rec));
}

void run_profile(const RunConfig& c, const EvalContext& ctx, RunReport& report) {
  const InequalityId id = resolve_ids(c, true)[0];
  const SearchProblem problem = problem_for(c, id);
  const SearchSpace space = SearchSpace::kernel_family(problem, c.rho, c.tail_tol);
  if (c.samples < 2) throw DomainError("config: --samples must be >= 2");

  const int d = space.parameter_count();
  std::vector<double> from(static_cast<std::size_t>(d), 0.0);
  std::vector<double> to(static_cast<std::size_t>(d), 0.0);
  if (c.w.empty()) {
    to[0] = 0.98 * c.rho;  // real-axis ray by default
  } else {
    if (c.w.size() != static_cast<std::size_t>(d)) {
      throw DomainError("config: --w needs re and im for each axis");
    }
    to = c.w;
  }

  Record rec;
  rec.kind = Record::Kind::kProfile;
  rec.label = std::string(inequality_name(id));
  rec.profile = ratio_profile(space, from, to, c.samples, ctx);
  report.records.push_back(std::move(rec));

  if (!c.table_path.empty()) {
    std::ofstream out(c.table_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open table file: " + c.table_path);
    out << "parameter\tratio\tvalid\n";
    char buf[96];
    for (const ProfilePoint& pt : report.records.back().profile) {
      std::snprintf(buf, sizeof(buf), "%.17g\t%.17g\t%d\n", pt.parameter,
                    pt.valid ? pt.ratio : 0.0, pt.valid ? 1 : 0);
      out << buf;
    }
    if (!out) throw IoError("write failure: " + c.table_path);
  }
}

void write_config_echo(JsonWriter& w, const RunConfig& c) {
  w.key("config");
  w.begin_object();
  w.key("command");
  w.value(c.command);
  w.key("inequalities");
  w.begin_array();
  for (const std::string& name : c.inequalities) w.value(name);
  w.end_array();
  w.key("n");
  w.value(c.n);
  w.key("m");
  w.value(c.m);
  w.key("degree");
  w.value(c.degree);
  w.key("p");
  w.begin_array();
  for (double v : c.p) w.value(v);
  w.end_array();
  w.key("q");
  w.begin_array();
  for (double v : c.q) w.value(v);
  w.end_array();
  w.key("grid");
  w.value(c.grid);
  w.key("radial");
  w.value(c.radial);
  w.key("max_doublings");
  w.value(c.max_doublings);
  w.key("tol");
  w.value(c.tol);
  w.key("equality_tol");
  w.value(c.equality_tol);
  w.key("trials");
  w.value(c.trials);
  w.key("seed");
  w.value(static_cast<unsigned long long>(c.seed));
  w.key("inputs");
  w.begin_array();
  for (const std::string& path : c.inputs) w.value(path);
  w.end_array();
  w.key("out_path");
  w.value(c.out_path);
  w.key("use_extremal");
  w.value(c.use_extremal);
  w.key("w");
  w.begin_array();
  for (double v : c.w) w.value(v);
  w.end_array();
  w.key("tail_tol");
  w.value(c.tail_tol);
  w.key("family");
  w.value(c.family);
  w.key("budget");
  w.value(c.budget);
  w.key("rho");
  w.value(c.rho);
  w.key("mu_q");
  w.value(c.mu_q);
  w.key("phi");
  w.value(c.phi);
  w.key("law");
  w.value(c.law);
  w.key("samples");
  w.value(c.samples);
  w.key("table_path");
  w.value(c.table_path);
  w.key("curve_path");
  w.value(c.curve_path);
  w.end_object();
}

}  // namespace

RunReport run(const RunConfig& config) {
  const EvalContext ctx = make_context(config);
  RunReport report;
  report.config = config;
  if (config.command == "verify") {
    run_verify(config, ctx, report);
  } else if (config.command == "sweep") {
    run_sweep(config, ctx, report);
  } else if (config.command == "extremal") {
    run_extremal(config, ctx, report);
  } else if (config.command == "factor") {
    run_factor(config, ctx, report);
  } else if (config.command == "norms") {
    run_norms(config, ctx, report);
  } else if (config.command == "profile") {
    run_profile(config, ctx, report);
  } else {
    throw DomainError("config: unknown command '" + config.command + "'");
  }
  return report;
}

std::string render_report(const RunReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(kReportSchema);
  w.key("version");
  w.value(kVersionTag);
  write_config_echo(w, report.config);
  w.key("records");
  w.begin_array();
  for (const Record& rec : report.records) {
    switch (rec.kind) {
      case Record::Kind::kGap:
        write_gap_record(w, rec.label, rec.gap);
        break;
      case Record::Kind::kNorm:
        write_norm_record(w, rec.label, rec.norm);
        break;
      case Record::Kind::kFactor:
        write_factor_record(w, rec.label, rec.factor_p, rec.factor_roots, rec.factor);
        break;
      case Record::Kind::kSearch:
        write_search_record(w, rec.label, rec.search);
        break;
      case Record::Kind::kProfile:
        write_profile_record(w, rec.label, rec.profile);
        break;
    }
  }
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.key("records");
  w.value(static_cast<long long>(report.records.size()));
  w.key("holds");
  w.value(report.holds);
  w.key("equality");
  w.value(report.equality);
  w.key("violated");
  w.value(report.violated);
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

void write_report_file(const RunReport& report, const std::string& path) {
  const std::string text = render_report(report);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open report file: " + path);
  out << text;
  if (!out) throw IoError("write failure: " + path);
}

int report_exit_code(const RunReport& report) {
  return report.violated > 0 ? 2 : 0;
}

}  // namespace polyineq
