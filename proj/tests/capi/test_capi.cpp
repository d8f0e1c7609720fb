#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "varlip/varlip.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "varlip_capi" / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("grid and function handles") {
  const double lower[1] = {0.0};
  vl_grid* g = nullptr;
  REQUIRE(vl_grid_create(1, lower, 1.0, 8, &g) == VL_OK);
  CHECK(vl_grid_size(g) == 8);

  std::vector<double> v(8, 2.0);
  vl_function* f = nullptr;
  REQUIRE(vl_function_create(g, v.data(), v.size(), &f) == VL_OK);
  CHECK(vl_function_size(f) == 8);

  vl_function* bad = nullptr;
  CHECK(vl_function_create(g, v.data(), 5, &bad) == VL_ERR_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(vl_last_error()).find("grid size") != std::string::npos);

  vl_grid* none = nullptr;
  CHECK(vl_grid_create(3, lower, 1.0, 8, &none) != VL_OK);
  CHECK(vl_grid_create(1, nullptr, 1.0, 8, &none) == VL_ERR_ARGUMENT);

  std::vector<double> out(8);
  CHECK(vl_function_values(f, out.data(), 4) == VL_ERR_ARGUMENT);
  REQUIRE(vl_function_values(f, out.data(), out.size()) == VL_OK);
  CHECK(out[3] == 2.0);
  CHECK(std::string(vl_last_error()).empty());

  vl_function_destroy(f);
  vl_grid_destroy(g);
  vl_grid_destroy(nullptr);
}

TEST_CASE("norms and operators through the C layer") {
  const double lower[1] = {0.0};
  vl_grid* g = nullptr;
  REQUIRE(vl_grid_create(1, lower, 1.0, 64, &g) == VL_OK);
  std::vector<double> ones(64, 3.0);
  vl_function* f = nullptr;
  REQUIRE(vl_function_create(g, ones.data(), ones.size(), &f) == VL_OK);

  vl_exponent* p = nullptr;
  REQUIRE(vl_exponent_builtin(g, "constant", R"({"p0": 2.0})", &p) == VL_OK);
  double norm = 0.0;
  REQUIRE(vl_luxemburg_norm(f, p, &norm) == VL_OK);
  CHECK(norm == doctest::Approx(3.0).epsilon(1e-9));

  vl_exponent* low = nullptr;
  std::vector<double> pv(64, 0.5);
  CHECK(vl_exponent_create(g, pv.data(), pv.size(), 0.0, &low) == VL_ERR_EXPONENT_RANGE);
  CHECK(vl_exponent_builtin(g, "mystery", nullptr, &low) == VL_ERR_ARGUMENT);
  CHECK(vl_exponent_builtin(g, "constant", "[1]", &low) == VL_ERR_SCHEMA);

  vl_function* m = nullptr;
  REQUIRE(vl_fractional_maximal(f, 0.0, &m) == VL_OK);
  std::vector<double> out(64);
  vl_function_values(m, out.data(), out.size());
  CHECK(out[10] == doctest::Approx(3.0));
  vl_function_destroy(m);

  CHECK(vl_fractional_maximal(f, 1.5, &m) == VL_ERR_ARGUMENT);

  std::vector<double> ramp(64);
  for (int k = 0; k < 64; ++k) ramp[k] = (k + 0.5) / 64.0;
  vl_function* b = nullptr;
  REQUIRE(vl_function_create(g, ramp.data(), ramp.size(), &b) == VL_OK);
  std::vector<double> dv(64, 0.5);
  vl_function* delta = nullptr;
  REQUIRE(vl_function_create(g, dv.data(), dv.size(), &delta) == VL_OK);
  double lip = 0.0;
  REQUIRE(vl_pointwise_lipschitz_norm(b, delta, &lip) == VL_OK);
  CHECK(lip == doctest::Approx(std::sqrt(63.0 / 64.0)));

  vl_function* c = nullptr;
  REQUIRE(vl_maximal_commutator(b, f, 0.0, &c) == VL_OK);
  vl_function_destroy(c);
  REQUIRE(vl_nonlinear_sharp_commutator(b, f, &c) == VL_OK);
  vl_function_destroy(c);
  CHECK(vl_maximal_commutator(nullptr, f, 0.0, &c) == VL_ERR_ARGUMENT);

  vl_function_destroy(b);
  vl_function_destroy(delta);
  vl_function_destroy(f);
  vl_exponent_destroy(p);
  vl_grid_destroy(g);
}

TEST_CASE("suite listing and runs") {
  size_t needed = 0;
  REQUIRE(vl_suite_list_checks(nullptr, 0, &needed) == VL_OK);
  std::string buf(needed, '\0');
  char tiny[4];
  CHECK(vl_suite_list_checks(tiny, sizeof tiny, &needed) == VL_ERR_ARGUMENT);
  REQUIRE(vl_suite_list_checks(buf.data(), buf.size(), &needed) == VL_OK);
  CHECK(buf.find("norm_homogeneity\n") != std::string::npos);

  const char* cfg = R"({"grid": {"cells": 256, "probe_cells": 32}})";
  const char* ids[] = {"norm_homogeneity", "exponent_conjugacy"};
  const fs::path dir = scratch("run");
  int code = -1;
  REQUIRE(vl_suite_run(cfg, dir.string().c_str(), ids, 2, nullptr, &code) == VL_OK);
  CHECK(code == 0);
  CHECK(fs::exists(dir / "report.json"));
  const std::string csv = slurp(dir / "summary.csv");
  CHECK(csv.rfind("check_id,paper_location,measured,bound,passed,runtime_ms\r\n", 0) == 0);

  const char* unknown[] = {"bogus"};
  CHECK(vl_suite_run(cfg, dir.string().c_str(), unknown, 1, nullptr, &code) == VL_ERR_ARGUMENT);
  CHECK(code == 1);
  CHECK(std::string(vl_last_error()).find("norm_homogeneity") != std::string::npos);

  CHECK(vl_suite_run(R"({"beta": 9})", dir.string().c_str(), ids, 2, nullptr, &code) != VL_OK);
  CHECK(code == 1);
  CHECK(std::string(vl_last_error()).find("beta") != std::string::npos);

  CHECK(vl_suite_run(R"({"grid": {"dim": "one"}})", dir.string().c_str(), ids, 2, nullptr, &code) ==
        VL_ERR_SCHEMA);
  CHECK(std::string(vl_last_error()).find("/grid/dim") != std::string::npos);

  const char* loose = R"({"grid": {"cells": 256, "probe_cells": 32}, "tolerances": {"modular": 1e-3}})";
  const char* modular[] = {"norm_unit_modular"};
  REQUIRE(vl_suite_run(loose, dir.string().c_str(), modular, 1, nullptr, &code) == VL_OK);
  CHECK(code == 2);

  const uint64_t seed = 7;
  REQUIRE(vl_suite_run(cfg, dir.string().c_str(), ids, 2, &seed, &code) == VL_OK);
  CHECK(slurp(dir / "report.json").find("\"seed\": 7") != std::string::npos);
}
