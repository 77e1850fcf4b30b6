#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <string>

#include <doctest.h>

#include "polyineq/coefficient_io.hpp"
#include "polyineq/errors.hpp"
#include "polyineq/random_function.hpp"
#include "polyineq/report.hpp"
#include "polyineq/runner.hpp"
#include "test_util.hpp"

using namespace polyineq;
using polyineq::testing::random_poly;

namespace {

std::string temp_path(const char* name) {
  return std::string("/tmp/polyineq_test_") + name;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("coefficient files round-trip losslessly") {
  std::mt19937_64 rng(404);
  for (const int n : {1, 2}) {
    const PolySeries f = random_poly(rng, n, 3);
    const std::string text = coefficients_to_string(f);
    const PolySeries g = coefficients_from_string(text);
    CHECK(g.dim() == f.dim());
    CHECK(g.max_degree() == f.max_degree());
    REQUIRE(g.coeffs().size() == f.coeffs().size());
    for (const auto& [alpha, v] : f.coeffs()) {
      CHECK(g.coeff(alpha) == v);  // bitwise, 17 significant digits
    }
    CHECK(coefficients_to_string(g) == text);
  }
}

TEST_CASE("coefficient files over a file system round-trip") {
  std::mt19937_64 rng(405);
  const PolySeries f = random_poly(rng, 2, 2);
  const std::string path = temp_path("roundtrip.json");
  save_coefficients(f, path);
  const PolySeries g = load_coefficients(path);
  for (const auto& [alpha, v] : f.coeffs()) CHECK(g.coeff(alpha) == v);
  std::remove(path.c_str());
}

TEST_CASE("missing indices read as zero") {
  const PolySeries f = coefficients_from_string(
      R"({"dim":1,"degree":[4],"coeffs":[{"alpha":[2],"re":3.5,"im":-1}]})");
  CHECK(f.coeff(MultiIndex({0})) == Complex(0.0, 0.0));
  CHECK(f.coeff(MultiIndex({2})) == Complex(3.5, -1.0));
  CHECK(f.max_degree()[0] == 4);
}

TEST_CASE("malformed coefficient files are rejected") {
  CHECK_THROWS_AS(coefficients_from_string("not json"), IoError);
  CHECK_THROWS_AS(coefficients_from_string("[1,2]"), IoError);
  CHECK_THROWS_AS(coefficients_from_string(R"({"degree":[1],"coeffs":[]})"),
                  IoError);
  CHECK_THROWS_AS(
      coefficients_from_string(R"({"dim":0,"degree":[],"coeffs":[]})"), IoError);
  CHECK_THROWS_AS(coefficients_from_string(
                      R"({"dim":1,"degree":[2],"coeffs":[{"alpha":[3],"re":1,"im":0}]})"),
                  IoError);
  CHECK_THROWS_AS(coefficients_from_string(
                      R"({"dim":1,"degree":[2],"coeffs":[{"alpha":[-1],"re":1,"im":0}]})"),
                  IoError);
  CHECK_THROWS_AS(
      coefficients_from_string(
          R"({"dim":1,"degree":[2],"coeffs":[{"alpha":[1],"re":1,"im":0},{"alpha":[1],"re":2,"im":0}]})"),
      IoError);
  CHECK_THROWS_AS(load_coefficients("/nonexistent/path.json"), IoError);
}

TEST_CASE("boundary modulus files parse and validate") {
  const std::string path = temp_path("modulus.txt");
  std::string text = "# comment line\n\n";
  char line[64];
  for (int k = 0; k < 16; ++k) {
    std::snprintf(line, sizeof(line), "%.17g %.17g\n", k / 16.0,
                  1.5 + 0.25 * (k % 3));
    text += line;
  }
  write_text(path, text);
  const BoundaryModulus bm = load_boundary_modulus(path);
  CHECK(bm.size() == 16);
  CHECK(bm.samples()[0] == doctest::Approx(1.5));

  write_text(path, "0 1\n0.5 1\n");  // too few samples
  CHECK_THROWS_AS(load_boundary_modulus(path), IoError);

  std::string bad = text;
  bad += "0.25 1.0\n";  // fraction out of order
  write_text(path, bad);
  CHECK_THROWS_AS(load_boundary_modulus(path), IoError);
  std::remove(path.c_str());
}

TEST_CASE("curve files parse two columns") {
  const std::string path = temp_path("curve.txt");
  write_text(path, "1 0\n0 1\n-1 0\n0 -1\n");
  const std::vector<Complex> curve = load_curve(path);
  REQUIRE(curve.size() == 4);
  CHECK(curve[1] == Complex(0.0, 1.0));

  write_text(path, "1 0\n0 1\n");
  CHECK_THROWS_AS(load_curve(path), IoError);
  write_text(path, "1 0\n0 junk\n-1 0\n");
  CHECK_THROWS_AS(load_curve(path), IoError);
  std::remove(path.c_str());
}

TEST_CASE("json writer produces exact structural output") {
  JsonWriter w;
  w.begin_object();
  w.key("name");
  w.value("va\"l\\ue\n\t");
  w.key("count");
  w.value(3);
  w.key("flag");
  w.value(true);
  w.key("items");
  w.begin_array();
  w.value(0.5);
  w.value(false);
  w.end_array();
  w.end_object();
  CHECK(w.str() ==
        "{\"name\":\"va\\\"l\\\\ue\\n\\t\",\"count\":3,\"flag\":true,"
        "\"items\":[0.5,false]}");
}

TEST_CASE("json writer prints doubles with round-trip precision") {
  JsonWriter w;
  w.begin_array();
  const double probe = 0.1 + 0.2;  // not representable as a short decimal
  w.value(probe);
  w.end_array();
  const std::string text = w.str();
  const double parsed = std::strtod(text.c_str() + 1, nullptr);
  CHECK(parsed == probe);
}

TEST_CASE("json writer rejects misuse and non-finite numbers") {
  JsonWriter w;
  w.begin_object();
  CHECK_THROWS_AS(w.value(1.0), NumericalError);  // key required first
  w.key("x");
  CHECK_THROWS_AS(w.value(std::nan("")), NumericalError);
  w.value(1.0);
  CHECK_THROWS_AS(w.str(), NumericalError);  // scope still open
  w.end_object();
  CHECK(w.str() == "{\"x\":1}");
}

TEST_CASE("run reports are deterministic and well formed") {
  RunConfig config;
  config.command = "verify";
  config.inequalities = {"carleman", "main_product"};
  config.n = 1;
  config.degree = 2;
  config.seed = 99;

  const RunReport a = run(config);
  const RunReport b = run(config);
  const std::string ra = render_report(a);
  const std::string rb = render_report(b);
  CHECK(ra == rb);
  CHECK(a.records.size() == 2);
  CHECK(a.holds + a.equality + a.violated == 2);
  CHECK(ra.find("\"schema\":\"polyineq.report/1\"") != std::string::npos);
  CHECK(ra.back() == '\n');
}

TEST_CASE("report files match the rendered string") {
  RunConfig config;
  config.command = "norms";
  config.n = 2;
  config.degree = 2;
  config.seed = 3;
  const RunReport rep = run(config);
  const std::string path = temp_path("report.json");
  write_report_file(rep, path);
  CHECK(read_text(path) == render_report(rep));
  std::remove(path.c_str());
  CHECK(report_exit_code(rep) == 0);
}

TEST_CASE("runner validates its configuration") {
  RunConfig config;
  config.command = "fly";
  CHECK_THROWS_AS(run(config), DomainError);

  config.command = "verify";
  config.inequalities = {};
  CHECK_THROWS_AS(run(config), DomainError);

  config.inequalities = {"carleman", "carleman"};
  config.command = "extremal";
  CHECK_THROWS_AS(run(config), DomainError);

  config.command = "verify";
  config.inequalities = {"no_such"};
  CHECK_THROWS_AS(run(config), DomainError);

  config.inequalities = {"carleman"};
  config.trials = 0;
  config.command = "sweep";
  CHECK_THROWS_AS(run(config), DomainError);
}

TEST_CASE("violation verdicts drive the exit code") {
  RunConfig config;
  config.command = "verify";
  config.inequalities = {"phi_main"};
  config.phi = "powprod:2";
  config.m = 2;
  config.p = {1.0, 1.0};
  config.use_extremal = true;
  config.w = {0.8, 0.0};
  const RunReport rep = run(config);
  CHECK(rep.violated == 1);
  CHECK(report_exit_code(rep) == 2);
}

TEST_CASE("random function generation is a pure function of its seed") {
  for (const CoefficientLaw law :
       {CoefficientLaw::kUniformDisc, CoefficientLaw::kGaussian}) {
    const PolySeries a = generate_random_function(2024, 2, 3, law);
    const PolySeries b = generate_random_function(2024, 2, 3, law);
    CHECK(coefficients_to_string(a) == coefficients_to_string(b));

    const PolySeries c = generate_random_function(99, 1, 0, law);
    CHECK(c.dim() == 1);
    CHECK(c.max_degree() == std::vector<int>{0});
    CHECK_FALSE(c.is_zero());

    std::set<std::string> seen;
    for (unsigned long long seed = 1; seed <= 100; ++seed) {
      seen.insert(coefficients_to_string(
          generate_random_function(seed, 1, 2, law)));
    }
    CHECK(seen.size() == 100);
  }
}
