#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varlip/harness/config.hpp"
#include "varlip/harness/report.hpp"

namespace varlip::harness {

struct SuiteOptions {
  std::vector<std::string> checks;     // overrides the config's list when non-empty
  std::optional<std::uint64_t> seed;   // overrides family_seed
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  Json document;       // {metadata, payload}
  std::string csv;
  int exit_code = 0;   // 0 all passed, 2 some check failed
};

// Unknown ids raise Error(argument) listing the valid ones. Checks run in
// registry order regardless of the order requested.
std::vector<std::string> select_checks(const std::vector<std::string>& requested);

SuiteResult run_suite(const Config& cfg, const SuiteOptions& opts = {});

// Writes report.json and summary.csv into `dir`, creating it if needed.
void write_outputs(const SuiteResult& result, const std::string& dir);

// Deterministic part of a report.json document.
std::string payload_text(const Json& document);

}  // namespace varlip::harness
