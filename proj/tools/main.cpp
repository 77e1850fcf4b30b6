// Command line front end. All numerical work lives in the core library;
// this file only maps flags onto RunConfig and picks the exit code.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "polyineq/errors.hpp"
#include "polyineq/runner.hpp"

namespace {

void add_common_options(CLI::App* sub, polyineq::RunConfig& c) {
  sub->add_option("--inequality", c.inequalities,
                  "Inequality name(s): burbea_hilbert, main_product, "
                  "equal_function, carleman, carleman_double, isoperimetric, "
                  "logsub, phi_main");
  sub->add_option("--n", c.n, "Number of complex variables")
      ->check(CLI::PositiveNumber);
  sub->add_option("--m", c.m, "Number of functions in the tuple")
      ->check(CLI::PositiveNumber);
  sub->add_option("--degree", c.degree,
                  "Per-axis degree cap for random or search polynomials")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--p", c.p, "Exponent per function (one value broadcasts)");
  sub->add_option("--q", c.q,
                  "Weight scalar per function (burbea_hilbert) or the space "
                  "weight (norms)");
  sub->add_option("--grid", c.grid,
                  "Angular points per axis, 0 means adaptive");
  sub->add_option("--radial", c.radial,
                  "Radial points per axis, 0 means adaptive");
  sub->add_option("--max-doublings", c.max_doublings,
                  "Adaptive refinement cap for disc quadrature");
  sub->add_option("--tol", c.tol, "Base violation tolerance");
  sub->add_option("--equality-tol", c.equality_tol,
                  "Relative width of the equality detection band");
  sub->add_option("--trials", c.trials, "Random trials per inequality (sweep)");
  sub->add_option("--seed", c.seed, "Seed for all random draws");
  sub->add_option("--in", c.inputs, "Coefficient file(s), one per function");
  sub->add_option("--out", c.out_path,
                  "Report path; without it the report goes to stdout");
  sub->add_flag("--extremal", c.use_extremal,
                "Evaluate at the kernel extremal tuple instead of random input");
  sub->add_option("--w", c.w,
                  "Kernel point, interleaved re/im per axis (default 0.4 on "
                  "each axis)");
  sub->add_option("--tail-tol", c.tail_tol, "Kernel truncation tail bound");
  sub->add_option("--family", c.family,
                  "Search family: coefficient_ball or kernel_family");
  sub->add_option("--budget", c.budget,
                  "Objective evaluation budget, 0 picks one from the dimension");
  sub->add_option("--rho", c.rho, "Radius bound for the kernel family");
  sub->add_option("--mu-q", c.mu_q,
                  "Bergman weight for logsub/phi_main, 0 means the function "
                  "count");
  sub->add_option("--phi", c.phi,
                  "Combiner for phi_main: product, min, or powprod:<s>");
  sub->add_option("--law", c.law,
                  "Random coefficient law: uniform_disc or gaussian");
  sub->add_option("--samples", c.samples, "Sample count along a profile ray");
  sub->add_option("--table", c.table_path,
                  "Tab separated profile table output path");
  sub->add_option("--curve", c.curve_path,
                  "Sampled boundary curve file (isoperimetric)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp integral inequalities on the unit polydisc"};
  app.require_subcommand(1);

  polyineq::RunConfig config;
  const std::pair<const char*, const char*> commands[] = {
      {"verify", "Check inequalities on one explicit input tuple"},
      {"sweep", "Check inequalities on many random tuples"},
      {"extremal", "Search a family for the largest lhs/rhs ratio"},
      {"factor", "Root, Blaschke, and outer factorization of a polynomial"},
      {"norms", "Series and quadrature norms of one function"},
      {"profile", "Ratio profile along a ray in the kernel family"},
  };
  for (const auto& [name, help] : commands) {
    add_common_options(app.add_subcommand(name, help), config);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    const auto start = std::chrono::steady_clock::now();
    const polyineq::RunReport report = polyineq::run(config);
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;

    if (config.out_path.empty()) {
      std::fputs(polyineq::render_report(report).c_str(), stdout);
    } else {
      polyineq::write_report_file(report, config.out_path);
    }
    // Wall clock stays on stderr so reports are byte-stable across runs.
    std::fprintf(stderr,
                 "[polyineq] %s: %zu record(s), %d holds, %d equality, "
                 "%d violated (%.3f s)\n",
                 config.command.c_str(), report.records.size(), report.holds,
                 report.equality, report.violated, elapsed.count());
    return polyineq::report_exit_code(report);
  } catch (const polyineq::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
