#include "polyineq/report.hpp"

#include <cmath>
#include <cstdio>

#include "polyineq/errors.hpp"

namespace polyineq {

JsonWriter::JsonWriter() = default;

void JsonWriter::prepare_slot() {
  if (stack_.empty()) return;
  Frame& top = stack_.back();
  if (top.is_object) {
    if (!top.key_pending) {
      throw NumericalError("JsonWriter: value in object without a key");
    }
    top.key_pending = false;
    return;
  }
  if (top.has_items) out_ += ',';
  top.has_items = true;
}

void JsonWriter::begin_object() {
  prepare_slot();
  out_ += '{';
  stack_.push_back({true, false, false});
}

void JsonWriter::end_object() {
  if (stack_.empty() || !stack_.back().is_object || stack_.back().key_pending) {
    throw NumericalError("JsonWriter: mismatched end_object");
  }
  stack_.pop_back();
  out_ += '}';
}

void JsonWriter::begin_array() {
  prepare_slot();
  out_ += '[';
  stack_.push_back({false, false, false});
}

void JsonWriter::end_array() {
  if (stack_.empty() || stack_.back().is_object) {
    throw NumericalError("JsonWriter: mismatched end_array");
  }
  stack_.pop_back();
  out_ += ']';
}

void JsonWriter::key(std::string_view k) {
  if (stack_.empty() || !stack_.back().is_object || stack_.back().key_pending) {
    throw NumericalError("JsonWriter: key outside an object");
  }
  Frame& top = stack_.back();
  if (top.has_items) out_ += ',';
  top.has_items = true;
  top.key_pending = true;
  write_string(k);
  out_ += ':';
}

void JsonWriter::write_string(std::string_view v) {
  out_ += '"';
  for (unsigned char c : v) {
    switch (c) {
      case '"':
        out_ += "\\\"";
        break;
      case '\\':
        out_ += "\\\\";
        break;
      case '\n':
        out_ += "\\n";
        break;
      case '\t':
        out_ += "\\t";
        break;
      case '\r':
        out_ += "\\r";
        break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += static_cast<char>(c);
        }
    }
  }
  out_ += '"';
}

void JsonWriter::value(double v) {
  if (!std::isfinite(v)) {
    throw NumericalError("JsonWriter: non-finite number in a report");
  }
  prepare_slot();
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out_ += buf;
}

void JsonWriter::value(int v) { value(static_cast<long long>(v)); }

void JsonWriter::value(long long v) {
  prepare_slot();
  out_ += std::to_string(v);
}

void JsonWriter::value(unsigned long long v) {
  prepare_slot();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
  prepare_slot();
  out_ += v ? "true" : "false";
}

void JsonWriter::value(std::string_view v) {
  prepare_slot();
  write_string(v);
}

const std::string& JsonWriter::str() const {
  if (!stack_.empty()) {
    throw NumericalError("JsonWriter: document has unclosed scopes");
  }
  return out_;
}

void write_gap_record(JsonWriter& w, std::string_view label, const GapReport& rep) {
  w.begin_object();
  w.key("kind");
  w.value("gap");
  w.key("label");
  w.value(label);
  w.key("inequality");
  w.value(inequality_name(rep.id));
  w.key("lhs");
  w.value(rep.lhs);
  w.key("rhs");
  w.value(rep.rhs);
  w.key("gap");
  w.value(rep.gap);
  w.key("ratio");
  w.value(rep.ratio);
  w.key("tolerance");
  w.value(rep.tolerance);
  w.key("equality_tolerance");
  w.value(rep.equality_tolerance);
  w.key("verdict");
  w.value(verdict_name(rep.verdict));
  w.key("diagnostics");
  w.begin_object();
  w.key("description");
  w.value(rep.diagnostics.description);
  w.key("degrees");
  w.begin_array();
  for (int d : rep.diagnostics.degrees) w.value(d);
  w.end_array();
  w.key("tail_bound");
  w.value(rep.diagnostics.tail_bound);
  w.key("radial_points");
  w.value(rep.diagnostics.radial_points);
  w.key("angular_points");
  w.value(rep.diagnostics.angular_points);
  w.key("quadrature_converged");
  w.value(rep.diagnostics.quadrature_converged);
  w.key("quadrature_uncertainty");
  w.value(rep.diagnostics.quadrature_uncertainty);
  w.key("cross_check_delta");
  w.value(rep.diagnostics.cross_check_delta);
  w.key("certified");
  w.value(rep.diagnostics.certified);
  w.key("label");
  w.value(rep.diagnostics.label);
  w.end_object();
  w.end_object();
}

void write_norm_record(JsonWriter& w, std::string_view label, const NormReport& rep) {
  w.begin_object();
  w.key("kind");
  w.value("norm");
  w.key("label");
  w.value(label);
  w.key("series_value");
  w.value(rep.series_value);
  w.key("has_integral");
  w.value(rep.has_integral);
  w.key("integral_value");
  w.value(rep.integral_value);
  w.key("relative_discrepancy");
  w.value(rep.relative_discrepancy);
  w.end_object();
}

namespace {

std::string_view location_name(RootLocation loc) {
  switch (loc) {
    case RootLocation::kInside:
      return "inside";
    case RootLocation::kBoundary:
      return "boundary";
    case RootLocation::kOutside:
      return "outside";
  }
  return "unknown";
}

}  // namespace

void write_factor_record(JsonWriter& w, std::string_view label, double p,
                         const RootSet& roots, const RieszFactorization& fac) {
  w.begin_object();
  w.key("kind");
  w.value("factor");
  w.key("label");
  w.value(label);
  w.key("p");
  w.value(p);
  w.key("zeros");
  w.begin_array();
  for (const RootRecord& root : roots.roots) {
    w.begin_object();
    w.key("re");
    w.value(root.location.real());
    w.key("im");
    w.value(root.location.imag());
    w.key("location");
    w.value(location_name(root.cls));
    w.key("residual");
    w.value(root.residual);
    w.end_object();
  }
  w.end_array();
  w.key("origin_order");
  w.value(fac.blaschke.origin_order);
  w.key("blaschke_degree");
  w.value(fac.blaschke.degree());
  w.key("f_norm");
  w.value(fac.f_norm);
  w.key("h_norm");
  w.value(fac.h_norm);
  w.key("norm_gap");
  w.value(fac.norm_gap);
  w.key("min_h_near_boundary");
  w.value(fac.min_h_near_boundary);
  w.end_object();
}

void write_search_record(JsonWriter& w, std::string_view label,
                         const SearchResult& result) {
  w.begin_object();
  w.key("kind");
  w.value("search");
  w.key("label");
  w.value(label);
  w.key("best_ratio");
  w.value(result.best_ratio);
  w.key("evaluations");
  w.value(result.evaluations);
  w.key("rejections");
  w.value(result.rejections);
  w.key("converged");
  w.value(result.converged);
  w.key("nearest_kernel_distance");
  w.value(result.nearest_kernel_distance);
  w.key("restart_best");
  w.begin_array();
  for (double r : result.restart_best) w.value(r);
  w.end_array();
  w.key("best_parameters");
  w.begin_array();
  for (double v : result.best_parameters) w.value(v);
  w.end_array();
  w.end_object();
}

void write_profile_record(JsonWriter& w, std::string_view label,
                          const std::vector<ProfilePoint>& points) {
  w.begin_object();
  w.key("kind");
  w.value("profile");
  w.key("label");
  w.value(label);
  w.key("points");
  w.begin_array();
  for (const ProfilePoint& pt : points) {
    w.begin_object();
    w.key("parameter");
    w.value(pt.parameter);
    w.key("ratio");
    w.value(pt.valid ? pt.ratio : 0.0);
    w.key("valid");
    w.value(pt.valid);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

}  // namespace polyineq
