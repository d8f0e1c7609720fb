#include "varlip/harness/report.hpp"

#include <cmath>
#include <cstdio>

namespace varlip::harness {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

}  // namespace

void CheckReport::settle() {
  passed = !bound || (!std::isnan(measured) && measured <= *bound + slack);
}

Json to_json(const CheckReport& r) {
  Json j;
  j["check_id"] = r.check_id;
  j["paper_location"] = r.paper_location;
  j["measured"] = r.measured;
  j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  j["slack"] = r.slack;
  j["passed"] = r.passed;
  j["witness"] = r.witness;
  j["schedule_flags"] = r.schedule_flags;
  j["details"] = r.details;
  return j;
}

std::string summary_csv(const std::vector<CheckReport>& reports) {
  std::string out = "check_id,paper_location,measured,bound,passed,runtime_ms\r\n";
  for (const auto& r : reports) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.runtime_ms);
    out += csv_field(r.check_id) + ',' + csv_field(r.paper_location) + ',' +
           csv_number(r.measured) + ',' + (r.bound ? csv_number(*r.bound) : std::string()) + ',' +
           (r.passed ? "true" : "false") + ',' + ms + "\r\n";
  }
  return out;
}

}  // namespace varlip::harness
