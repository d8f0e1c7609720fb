#include "varlip/harness/suite.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "varlip/error.hpp"
#include "varlip/harness/checks.hpp"
#include "varlip/harness/context.hpp"

namespace varlip::harness {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) fail(ErrorCode::io, "cannot write '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<std::string> select_checks(const std::vector<std::string>& requested) {
  const auto& registry = check_registry();
  for (const auto& id : requested) {
    const bool known = std::any_of(registry.begin(), registry.end(),
                                   [&](const CheckSpec& c) { return c.id == id; });
    if (!known) {
      std::string valid;
      for (const auto& c : registry) valid += (valid.empty() ? "" : ", ") + std::string(c.id);
      fail(ErrorCode::argument, "unknown check id '" + id + "'; valid ids: " + valid);
    }
  }
  std::vector<std::string> out;
  for (const auto& c : registry) {
    if (requested.empty() || std::find(requested.begin(), requested.end(), c.id) != requested.end()) {
      out.emplace_back(c.id);
    }
  }
  return out;
}

SuiteResult run_suite(const Config& cfg, const SuiteOptions& opts) {
  const auto selected = select_checks(opts.checks.empty() ? cfg.checks : opts.checks);
  const std::uint64_t seed = opts.seed ? *opts.seed : cfg.family_seed;
  const auto start = std::chrono::steady_clock::now();
  Context ctx(cfg, seed);

  SuiteResult result;
  for (const auto& spec : check_registry()) {
    if (std::find(selected.begin(), selected.end(), spec.id) == selected.end()) continue;
    CheckReport r;
    r.check_id = spec.id;
    r.paper_location = spec.location;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      spec.run(ctx, r);
    } catch (const Error& e) {
      throw Error(e.code(), "check " + r.check_id + ": " + e.what());
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.settle();
    ctx.emitted_locations().push_back(r.paper_location);
    result.reports.push_back(std::move(r));
  }
  const double total =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::size_t passed = 0;
  Json checks = Json::array();
  Json runtimes = Json::object();
  for (const auto& r : result.reports) {
    passed += r.passed ? 1 : 0;
    checks.push_back(to_json(r));
    runtimes[r.check_id] = r.runtime_ms;
  }
  Json cfg_json = cfg.to_json();
  cfg_json["family_seed"] = seed;
  Json payload;
  payload["seed"] = seed;
  payload["config"] = cfg_json;
  payload["checks"] = checks;
  payload["summary"] = {{"total", result.reports.size()},
                        {"passed", passed},
                        {"failed", result.reports.size() - passed}};
  Json metadata;
  metadata["generated_at"] = utc_timestamp();
  metadata["total_runtime_ms"] = total;
  metadata["runtime_ms"] = runtimes;
  result.document["metadata"] = metadata;
  result.document["payload"] = payload;
  result.csv = summary_csv(result.reports);
  result.exit_code = passed == result.reports.size() ? 0 : 2;
  return result;
}

void write_outputs(const SuiteResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create output directory '" + dir + "': " + ec.message());
  write_file(std::filesystem::path(dir) / "report.json", dump_json(result.document) + "\n");
  write_file(std::filesystem::path(dir) / "summary.csv", result.csv);
}

std::string payload_text(const Json& document) {
  return dump_json(document.at("payload"));
}

}  // namespace varlip::harness
