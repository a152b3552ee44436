#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "drspace/obstruction.hpp"

namespace drspace {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "drspace.report";
inline constexpr int kReportSchemaVersion = 1;

/// Check ids are unique; sorting by id makes the payload independent of the
/// order in which suites finished.
inline std::vector<LedgerStep> sorted_checks(std::vector<LedgerStep> checks) {
  std::stable_sort(checks.begin(), checks.end(), [](const LedgerStep& a, const LedgerStep& b) { return a.id < b.id; });
  return checks;
}

inline Json step_to_json(const LedgerStep& s) {
  Json j;
  j["id"] = s.id;
  j["paper_anchor"] = s.anchor;
  j["verdict"] = to_string(s.verdict);
  if (std::isfinite(s.residual)) j["residual"] = s.residual;
  else j["residual"] = nullptr;
  j["witness"] = s.witness;
  if (s.seed) j["seed"] = *s.seed;
  else j["seed"] = nullptr;
  j["required"] = s.required;
  return j;
}

inline Verdict verdict_from_string(const std::string& v) {
  if (v == "exact-pass") return Verdict::ExactPass;
  if (v == "numeric-pass") return Verdict::NumericPass;
  if (v == "fail") return Verdict::Fail;
  throw DomainError("unknown verdict '" + v + "'");
}

inline LedgerStep step_from_json(const Json& j) {
  LedgerStep s;
  s.id = j.at("id").get<std::string>();
  s.anchor = j.value("paper_anchor", "");
  s.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (j.contains("residual") && !j.at("residual").is_null()) s.residual = j.at("residual").get<double>();
  s.witness = j.value("witness", "");
  if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
  s.required = j.value("required", true);
  return s;
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Report document.  Wall-clock data (timestamp, per-check runtimes) lives in
/// "header"; everything under "checks" and "summary" is a function of the
/// configuration and seed only.
inline Json make_report(const std::vector<LedgerStep>& checks, const Json& config, const std::string& tool = "drverify") {
  const auto sorted = sorted_checks(checks);
  Json doc;
  doc["schema"] = kReportSchema;
  doc["schema_version"] = kReportSchemaVersion;
  Json header;
  header["tool"] = tool;
  header["timestamp"] = utc_timestamp();
  Json timing = Json::object();
  for (const auto& s : sorted) timing[s.id] = s.runtime;
  header["runtime_seconds"] = timing;
  doc["header"] = header;
  doc["config"] = config;
  Json arr = Json::array();
  std::size_t failed = 0, failed_required = 0;
  for (const auto& s : sorted) {
    arr.push_back(step_to_json(s));
    if (!s.passed()) {
      ++failed;
      if (s.required) ++failed_required;
    }
  }
  doc["checks"] = arr;
  doc["summary"] = {{"total", sorted.size()}, {"failed", failed}, {"failed_required", failed_required},
                    {"pass", failed_required == 0}};
  return doc;
}

/// The deterministic part of a report.
inline Json report_payload(const Json& doc) {
  Json p;
  p["config"] = doc.at("config");
  p["checks"] = doc.at("checks");
  p["summary"] = doc.at("summary");
  return p;
}

/// Parses a report, rejecting other schemas and newer versions.
inline std::vector<LedgerStep> parse_report(const Json& doc) {
  if (!doc.is_object() || doc.value("schema", "") != kReportSchema)
    throw DomainError("not a drspace report (schema field missing or different)");
  const int version = doc.value("schema_version", 0);
  if (version < 1 || version > kReportSchemaVersion)
    throw DomainError("unsupported report schema version " + std::to_string(version));
  std::vector<LedgerStep> out;
  for (const auto& c : doc.at("checks")) out.push_back(step_from_json(c));
  return out;
}

inline void write_json(const Json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write report to " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw DomainError("failed while writing " + path);
}

}  // namespace drspace
