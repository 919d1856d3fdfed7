#pragma once

// Check reports and their two renderings: machine-parseable key=value line
// records and a human text mode. Both carry identical fields. FAIL always
// names a witness; INCONCLUSIVE always names the exhausted bound.

#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlim/errors.hpp"

namespace qlim {

enum class CheckStatus { PASS, FAIL, INCONCLUSIVE };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS: return "PASS";
    case CheckStatus::FAIL: return "FAIL";
    case CheckStatus::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> fields;  // n=, side=, ... in fixed order
  CheckStatus status = CheckStatus::PASS;
  std::optional<std::string> witness;
  std::optional<double> residual;
  std::optional<int> degree_bound;
  std::optional<std::string> confluence;
  double runtime_ms = 0.0;

  CheckReport& field(const std::string& k, const std::string& v) {
    fields.emplace_back(k, v);
    return *this;
  }

  void validate() const {
    if (status == CheckStatus::FAIL && !witness)
      throw Error("report invariant: FAIL without witness in check " + check);
    if (status == CheckStatus::INCONCLUSIVE && !degree_bound)
      throw Error("report invariant: INCONCLUSIVE without the exhausted bound in " + check);
  }
};

namespace detail {

/// Single-quoted when the value contains spaces, '=' or quotes; embedded
/// quotes are doubled.
inline std::string quote_value(const std::string& v) {
  bool needs = v.empty();
  for (char c : v)
    if (c == ' ' || c == '=' || c == '\'') needs = true;
  if (!needs) return v;
  std::string out = "'";
  for (char c : v) {
    out += c;
    if (c == '\'') out += c;
  }
  return out + "'";
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

enum class ReportMode { text, records };

inline std::string render_record(const CheckReport& r, bool with_runtime = true) {
  r.validate();
  std::string line = "check=" + r.check;
  for (const auto& [k, v] : r.fields) line += " " + k + "=" + detail::quote_value(v);
  line += " status=" + to_string(r.status);
  if (r.witness) line += " witness=" + detail::quote_value(*r.witness);
  if (r.residual) line += " residual=" + detail::fmt_double(*r.residual);
  if (r.degree_bound) line += " degree_bound=" + std::to_string(*r.degree_bound);
  if (r.confluence) line += " confluence=" + detail::quote_value(*r.confluence);
  if (with_runtime) line += " runtime_ms=" + detail::fmt_double(r.runtime_ms);
  return line;
}

inline std::string render_text(const CheckReport& r, bool with_runtime = true) {
  r.validate();
  std::string line = "[" + to_string(r.status) + "] " + r.check;
  if (!r.fields.empty()) {
    line += " (";
    for (size_t k = 0; k < r.fields.size(); ++k)
      line += (k ? ", " : "") + r.fields[k].first + "=" + r.fields[k].second;
    line += ")";
  }
  if (r.witness) line += "  witness: " + *r.witness;
  if (r.residual) line += "  residual=" + detail::fmt_double(*r.residual);
  if (r.degree_bound) line += "  degree_bound=" + std::to_string(*r.degree_bound);
  if (r.confluence) line += "  confluence=" + *r.confluence;
  if (with_runtime) line += "  [" + detail::fmt_double(r.runtime_ms) + " ms]";
  return line;
}

inline std::string render(const CheckReport& r, ReportMode mode, bool with_runtime = true) {
  return mode == ReportMode::records ? render_record(r, with_runtime)
                                     : render_text(r, with_runtime);
}

/// Exit-code convention: 0 all PASS, 1 any FAIL, 3 no FAIL but some
/// INCONCLUSIVE, 2 (elsewhere) usage error.
inline int exit_code_for(const std::vector<CheckReport>& reports) {
  bool any_fail = false, any_inconclusive = false;
  for (const auto& r : reports) {
    if (r.status == CheckStatus::FAIL) any_fail = true;
    if (r.status == CheckStatus::INCONCLUSIVE) any_inconclusive = true;
  }
  if (any_fail) return 1;
  if (any_inconclusive) return 3;
  return 0;
}

}  // namespace qlim
