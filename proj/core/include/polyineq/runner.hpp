#ifndef POLYINEQ_RUNNER_HPP_
#define POLYINEQ_RUNNER_HPP_

#include <string>
#include <vector>

#include "polyineq/extremal_search.hpp"
#include "polyineq/factorization.hpp"
#include "polyineq/inequalities.hpp"
#include "polyineq/norms.hpp"

namespace polyineq {

// Everything that determines a run; two runs with equal configs
// produce byte-identical reports. Fields not used by a command keep
// their defaults and are still echoed into the report.
struct RunConfig {
  std::string command = "verify";  // verify | sweep | extremal | factor | norms | profile
  std::vector<std::string> inequalities;
  int n = 1;
  int m = 2;
  int degree = 3;
  std::vector<double> p;  // exponents, one per function where applicable
  std::vector<double> q;  // scalar weights per function (burbea) or measure (norms)
  int grid = 0;           // angular points override, 0 = policy default
  int radial = 0;         // radial points override, 0 = policy default
  int max_doublings = 3;  // adaptive refinement cap
  double tol = 1e-10;
  double equality_tol = 1e-6;
  int trials = 100;
  unsigned long long seed = 1;
  std::vector<std::string> inputs;  // coefficient files
  std::string out_path;             // empty = stdout only

  bool use_extremal = false;      // verify at the truncated extremal tuple
  std::vector<double> w;          // interior point, interleaved re im per axis
  double tail_tol = 1e-8;         // kernel truncation tolerance
  std::string family = "coefficient_ball";  // or kernel_family
  long long budget = 0;           // search evaluations, 0 = 300 per parameter
  double rho = 0.6;               // kernel family radius
  double mu_q = 0.0;              // logsub / phi_main measure, 0 = m
  std::string phi = "product";    // product | min | powprod:<s>
  std::string law = "uniform_disc";  // or gaussian
  int samples = 33;               // profile sample count
  std::string table_path;         // profile table output
  std::string curve_path;         // sampled isoperimetric input
};

struct Record {
  enum class Kind { kGap, kNorm, kFactor, kSearch, kProfile };
  Kind kind = Kind::kGap;
  std::string label;
  GapReport gap;
  NormReport norm;
  double factor_p = 0.0;
  RootSet factor_roots;
  RieszFactorization factor;
  SearchResult search;
  std::vector<ProfilePoint> profile;
};

struct RunReport {
  RunConfig config;
  std::vector<Record> records;
  int holds = 0;
  int equality = 0;
  int violated = 0;
};

// Dispatches the configured command. Throws subclasses of Error on
// invalid configs or inputs; never writes partial output.
RunReport run(const RunConfig& config);

// Deterministic serialization of the report (schema polyineq.report/1).
// Wall-clock time is deliberately absent: reports are pure functions
// of their configs.
std::string render_report(const RunReport& report);

void write_report_file(const RunReport& report, const std::string& path);

// 0 when every gap record holds or attains equality, 2 otherwise.
int report_exit_code(const RunReport& report);

}  // namespace polyineq

#endif  // POLYINEQ_RUNNER_HPP_
