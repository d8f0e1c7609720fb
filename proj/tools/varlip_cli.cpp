#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "varlip/varlip.h"

namespace {

int list_checks() {
  size_t needed = 0;
  if (vl_suite_list_checks(nullptr, 0, &needed) != VL_OK) {
    std::cerr << "error: " << vl_last_error() << "\n";
    return 1;
  }
  std::string buf(needed, '\0');
  vl_suite_list_checks(buf.data(), buf.size(), &needed);
  std::cout << buf.c_str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suite for variable-exponent maximal commutators"};
  std::string config;
  std::string out = "./out";
  std::vector<std::string> checks;
  std::optional<std::uint64_t> seed;
  bool list = false;
  app.add_option("--config", config, "JSON run configuration");
  app.add_option("--out", out, "Output directory for report.json and summary.csv")
      ->capture_default_str();
  app.add_option("--check", checks, "Run only this check id (repeatable)");
  app.add_option("--seed", seed, "Override family_seed");
  app.add_flag("--list-checks", list, "Print the registered check ids and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (list) return list_checks();
  if (config.empty()) {
    std::cerr << "error: --config is required\n";
    return 1;
  }

  std::ifstream in(config, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config << "'\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();

  std::vector<const char*> ids;
  for (const auto& c : checks) ids.push_back(c.c_str());
  int exit_code = 1;
  const vl_status s = vl_suite_run(text.str().c_str(), out.c_str(), ids.empty() ? nullptr : ids.data(),
                                   ids.size(), seed ? &*seed : nullptr, &exit_code);
  if (s != VL_OK) {
    std::cerr << "error: " << vl_last_error() << "\n";
    return 1;
  }
  std::cout << (exit_code == 0 ? "all checks passed" : "some checks failed") << "; wrote "
            << out << "/report.json and " << out << "/summary.csv\n";
  return exit_code;
}
