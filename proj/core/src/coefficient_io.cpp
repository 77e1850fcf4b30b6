#include "polyineq/coefficient_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polyineq/errors.hpp"

namespace polyineq {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double require_finite(const json& j, const char* field) {
  if (!j.is_number()) {
    throw IoError(std::string("coefficient file: '") + field + "' must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw IoError(std::string("coefficient file: non-finite '") + field + "'");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return buf.str();
}

}  // namespace

std::string coefficients_to_string(const PolySeries& f) {
  std::string out = "{\n  \"dim\": " + std::to_string(f.dim()) + ",\n  \"degree\": [";
  for (int j = 0; j < f.dim(); ++j) {
    if (j) out += ", ";
    out += std::to_string(f.max_degree()[static_cast<std::size_t>(j)]);
  }
  out += "],\n  \"coeffs\": [";
  bool first = true;
  for (const auto& [alpha, c] : f.coeffs()) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"alpha\": [";
    for (int j = 0; j < alpha.dim(); ++j) {
      if (j) out += ", ";
      out += std::to_string(alpha[j]);
    }
    out += "], \"re\": " + format_double(c.real()) +
           ", \"im\": " + format_double(c.imag()) + "}";
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

PolySeries coefficients_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("coefficient file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IoError("coefficient file: top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw IoError("coefficient file: missing integer 'dim'");
  }
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw IoError("coefficient file: 'dim' must be >= 1");
  if (!doc.contains("degree") || !doc["degree"].is_array() ||
      static_cast<int>(doc["degree"].size()) != dim) {
    throw IoError("coefficient file: 'degree' must list one cap per axis");
  }
  std::vector<int> degree;
  for (const json& d : doc["degree"]) {
    if (!d.is_number_integer() || d.get<int>() < 0) {
      throw IoError("coefficient file: degree caps must be non-negative integers");
    }
    degree.push_back(d.get<int>());
  }
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) {
    throw IoError("coefficient file: missing 'coeffs' array");
  }

  PolySeries f(dim, degree);
  for (const json& entry : doc["coeffs"]) {
    if (!entry.is_object() || !entry.contains("alpha") || !entry["alpha"].is_array() ||
        static_cast<int>(entry["alpha"].size()) != dim || !entry.contains("re") ||
        !entry.contains("im")) {
      throw IoError("coefficient file: each coefficient needs 'alpha', 're', 'im'");
    }
    std::vector<int> idx;
    for (const json& a : entry["alpha"]) {
      if (!a.is_number_integer() || a.get<int>() < 0) {
        throw IoError("coefficient file: multi-indices must be non-negative integers");
      }
      idx.push_back(a.get<int>());
    }
    for (int j = 0; j < dim; ++j) {
      if (idx[static_cast<std::size_t>(j)] > degree[static_cast<std::size_t>(j)]) {
        throw IoError("coefficient file: multi-index exceeds the degree cap");
      }
    }
    const MultiIndex alpha(idx);
    if (f.coeff(alpha) != Complex(0.0, 0.0)) {
      throw IoError("coefficient file: duplicate multi-index");
    }
    f.set_coeff(alpha,
                Complex(require_finite(entry["re"], "re"), require_finite(entry["im"], "im")));
  }
  return f;
}

void save_coefficients(const PolySeries& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << coefficients_to_string(f);
  if (!out) throw IoError("write failure: " + path);
}

PolySeries load_coefficients(const std::string& path) {
  return coefficients_from_string(read_file(path));
}

BoundaryModulus load_boundary_modulus(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<double> fractions;
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    double fraction = 0.0, value = 0.0;
    if (!(fields >> fraction >> value)) {
      throw IoError("boundary modulus: line " + std::to_string(lineno) +
                    " is not two numbers");
    }
    std::string rest;
    if (fields >> rest) {
      throw IoError("boundary modulus: line " + std::to_string(lineno) +
                    " has trailing fields");
    }
    fractions.push_back(fraction);
    values.push_back(value);
  }
  const std::size_t n = values.size();
  if (n < 8) throw IoError("boundary modulus: needs at least 8 samples");
  for (std::size_t k = 0; k < n; ++k) {
    const double expected = static_cast<double>(k) / static_cast<double>(n);
    if (std::abs(fractions[k] - expected) > 1e-9) {
      throw IoError("boundary modulus: sample " + std::to_string(k) +
                    " is not at the uniform angle k/N");
    }
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) {
      throw IoError("boundary modulus: samples must be positive and finite");
    }
  }
  return BoundaryModulus(std::move(values));
}

std::vector<Complex> load_curve(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Complex> curve;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    double x = 0.0, y = 0.0;
    if (!(fields >> x >> y)) {
      throw IoError("curve file: line " + std::to_string(lineno) + " is not two numbers");
    }
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw IoError("curve file: non-finite vertex");
    }
    curve.push_back(Complex(x, y));
  }
  if (curve.size() < 3) throw IoError("curve file: needs at least 3 vertices");
  return curve;
}

}  // namespace polyineq
