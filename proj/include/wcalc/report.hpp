#ifndef WCALC_REPORT_HPP
#define WCALC_REPORT_HPP

#include <string>

#include "wcalc/json.hpp"

namespace wcalc {

enum class ReportFormat { json, csv, text };

ReportFormat parse_report_format(const std::string& s);

// json: sanitized, pretty-printed with two-space indent and a trailing
// newline. csv: one row per record over the union of scalar fields, columns
// in first-seen order. text: aligned table.
std::string emit_report(const Json& report, ReportFormat fmt);

// Worst status over all records: "Error" > "Fails" > "Undetermined" > rest.
std::string worst_status(const Json& report);

}  // namespace wcalc

#endif
