#include "wcalc/report.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "wcalc/dsl.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"

namespace wcalc {

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) return shortest(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

bool is_scalar(const Json& v) { return v.is_primitive(); }

// Witness arrays [a, b] flatten to "a;b".
std::string witness_text(const Json& w) {
  if (!w.is_array()) return scalar_text(w);
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ";" : "") + scalar_text(w[i]);
  return s;
}

std::vector<std::pair<std::string, std::string>> flatten(const Json& rec) {
  std::vector<std::pair<std::string, std::string>> row;
  for (const auto& [k, v] : rec.items()) {
    if (is_scalar(v)) {
      row.emplace_back(k, scalar_text(v));
    } else if (v.is_object()) {
      for (const auto& [k2, v2] : v.items()) {
        if (is_scalar(v2)) row.emplace_back(k + "." + k2, scalar_text(v2));
        else if (k2 == "witness") row.emplace_back(k + "." + k2, witness_text(v2));
      }
    }
  }
  return row;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string emit_csv(const Json& report) {
  std::vector<std::string> cols;
  std::vector<std::map<std::string, std::string>> rows;
  for (const auto& rec : report.at("records")) {
    std::map<std::string, std::string> row;
    for (auto& [k, v] : flatten(rec)) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
      row[k] = v;
    }
    rows.push_back(std::move(row));
  }
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_field(cols[i]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      auto it = row.find(cols[i]);
      out += (i ? "," : "") + csv_field(it == row.end() ? "" : it->second);
    }
    out += "\n";
  }
  return out;
}

std::string summary(const Json& rec) {
  if (rec.contains("error")) return rec["error"].value("kind", "") + ": " + rec["error"].value("message", "");
  const Json& r = rec.value("result", Json::object());
  if (r.contains("witness") && !r["witness"].is_null()) return "witness " + witness_text(r["witness"]);
  if (r.contains("value") && is_scalar(r["value"])) return "value " + scalar_text(r["value"]);
  return "";
}

std::string emit_text(const Json& report) {
  std::vector<std::array<std::string, 4>> rows = {{"#", "status", "query", "detail"}};
  std::size_t n = 0;
  for (const auto& rec : report.at("records"))
    rows.push_back({std::to_string(++n), rec.value("status", ""), rec.value("query", ""), summary(rec)});
  std::array<std::size_t, 4> w{};
  for (const auto& r : rows)
    for (std::size_t i = 0; i < 3; ++i) w[i] = std::max(w[i], r[i].size());
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < 4; ++i) {
      line += r[i];
      if (i < 3) line += std::string(w[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

int rank(const std::string& s) {
  if (s == "Error") return 3;
  if (s == "Fails") return 2;
  if (s == "Undetermined") return 1;
  return 0;
}

}  // namespace

ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "text") return ReportFormat::text;
  throw InvalidParameter("format", "expected json, csv or text, got '" + s + "'");
}

std::string emit_report(const Json& report, ReportFormat fmt) {
  switch (fmt) {
    case ReportFormat::json: return sanitize(report).dump(2) + "\n";
    case ReportFormat::csv: return emit_csv(report);
    case ReportFormat::text: return emit_text(report);
  }
  return {};
}

std::string worst_status(const Json& report) {
  std::string worst = "Holds";
  for (const auto& rec : report.at("records")) {
    const std::string s = rec.value("status", "Holds");
    if (rank(s) > rank(worst)) worst = s;
  }
  return worst;
}

namespace dsl {

Json make_report(const Json& records, const ExecConfig& cfg) {
  const Thresholds& th = cfg.th;
  Json config{{"horizon", cfg.horizon},
              {"horizon_source", cfg.horizon_forced ? "flag" : "default"},
              {"seed", th.seed},
              {"index_grid", default_index_grid()},
              {"t_grid", {{"log_lo", LogGrid{}.log_lo}, {"log_hi", LogGrid{}.log_hi}, {"n", LogGrid{}.n}}},
              {"thresholds",
               {{"rel_stability", th.rel_stability},
                {"decay_ratio", th.decay_ratio},
                {"decay_rel_cap", th.decay_rel_cap},
                {"divergence_ratio", th.divergence_ratio},
                {"powerfit_margin", th.powerfit_margin},
                {"divergence_margin", th.divergence_margin},
                {"mono_tol", th.mono_tol},
                {"mg_random_pairs", th.mg_random_pairs}}}};
  return Json{{"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"config", config},
              {"records", records.is_null() ? Json::array() : records}};
}

}  // namespace dsl

}  // namespace wcalc
