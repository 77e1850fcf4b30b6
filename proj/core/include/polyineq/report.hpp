#ifndef POLYINEQ_REPORT_HPP_
#define POLYINEQ_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "polyineq/extremal_search.hpp"
#include "polyineq/factorization.hpp"
#include "polyineq/inequalities.hpp"
#include "polyineq/norms.hpp"

namespace polyineq {

inline constexpr std::string_view kReportSchema = "polyineq.report/1";
inline constexpr std::string_view kVersionTag = "0.1.0";

// Minimal ordered JSON emitter. Keys are written in call order and
// doubles with 17 significant digits, so a report is a pure function
// of the values fed in; non-finite numbers are refused. Used for every
// machine-readable artifact (reports, coefficient files share the
// double format).
class JsonWriter {
 public:
  JsonWriter();

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(std::string_view k);
  void value(double v);
  void value(int v);
  void value(long long v);
  void value(unsigned long long v);
  void value(bool v);
  void value(std::string_view v);
  // Literals must not decay onto the bool overload.
  void value(const char* v) { value(std::string_view(v)); }

  // Finishes and returns the document; valid once all scopes closed.
  const std::string& str() const;

 private:
  void prepare_slot();
  void write_string(std::string_view v);

  struct Frame {
    bool is_object = false;
    bool has_items = false;
    bool key_pending = false;
  };
  std::string out_;
  std::vector<Frame> stack_;
};

// Record serializers shared by the runner; each writes one object with
// a "kind" discriminator and a caller-supplied label.
void write_gap_record(JsonWriter& w, std::string_view label, const GapReport& rep);
void write_norm_record(JsonWriter& w, std::string_view label, const NormReport& rep);
void write_factor_record(JsonWriter& w, std::string_view label, double p,
                         const RootSet& roots, const RieszFactorization& fac);
void write_search_record(JsonWriter& w, std::string_view label,
                         const SearchResult& result);
void write_profile_record(JsonWriter& w, std::string_view label,
                          const std::vector<ProfilePoint>& points);

}  // namespace polyineq

#endif  // POLYINEQ_REPORT_HPP_
