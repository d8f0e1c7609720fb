#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varlip/harness/json_out.hpp"

namespace varlip::harness {

// One verification result. `passed` is measured <= bound + slack when a
// bound is present; checks without a bound only report.
struct CheckReport {
  std::string check_id;
  std::string paper_location;
  double measured = 0.0;
  std::optional<double> bound;
  double slack = 0.0;
  bool passed = false;
  Json witness;
  std::vector<std::string> schedule_flags;
  Json details = Json::object();
  double runtime_ms = 0.0;

  void settle();
};

Json to_json(const CheckReport& r);

// RFC 4180, CRLF line ends, fixed header.
std::string summary_csv(const std::vector<CheckReport>& reports);

}  // namespace varlip::harness
