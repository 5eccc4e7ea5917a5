#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace latcliff {

using json = nlohmann::ordered_json;

enum class CheckStatus { Pass, Fail, ReportOnly };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "report-only";
  }
}

/// One verified identity: residual against tolerance, or a measurement that
/// is recorded without being asserted (report-only entries never affect the
/// exit code).  Exact checks require a residual of exactly zero.
struct Check {
  std::string id;
  std::string anchor;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool exact = false;
  bool report_only = false;
  json extra = json::object();

  CheckStatus status() const {
    if (report_only) return CheckStatus::ReportOnly;
    const bool ok = exact ? (max_residual == 0.0) : (max_residual < tolerance);
    return ok ? CheckStatus::Pass : CheckStatus::Fail;
  }

  json to_json() const {
    json j;
    j["id"] = id;
    j["anchor"] = anchor;
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["max_residual"] = max_residual;
    j["tolerance"] = tolerance;
    if (exact) j["exact"] = true;
    j["status"] = to_string(status());
    return j;
  }
};

struct Report {
  std::string suite;
  json config = json::object();
  std::vector<Check> checks;
  double wall_ms = 0.0;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status() == CheckStatus::Fail) return false;
    return true;
  }

  int fail_count() const {
    int n = 0;
    for (const auto& c : checks)
      if (c.status() == CheckStatus::Fail) ++n;
    return n;
  }

  json to_json() const {
    json j;
    j["schema"] = 1;
    j["suite"] = suite;
    j["config"] = config;
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    j["checks"] = arr;
    j["wall_ms"] = wall_ms;
    return j;
  }
};

inline json reports_to_json(const std::vector<Report>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  return arr;
}

}  // namespace latcliff
