#include "varlip/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "varlip/error.hpp"

namespace varlip::harness {

namespace {

[[noreturn]] void schema(const std::string& pointer, const std::string& what) {
  fail(ErrorCode::schema, "config " + (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

std::string child(const std::string& pointer, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

void expect_keys(const Json& obj, const std::string& pointer,
                 std::initializer_list<const char*> known) {
  if (!obj.is_object()) schema(pointer, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) schema(child(pointer, key), "unknown key");
  }
}

double number(const Json& v, const std::string& pointer) {
  if (!v.is_number()) schema(pointer, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema(pointer, "expected a finite number");
  return x;
}

int integer(const Json& v, const std::string& pointer, int lo, int hi) {
  if (!v.is_number_integer()) schema(pointer, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi) {
    schema(pointer, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

std::string string(const Json& v, const std::string& pointer) {
  if (!v.is_string()) schema(pointer, "expected a string");
  return v.get<std::string>();
}

ParamMap params(const Json& v, const std::string& pointer) {
  if (!v.is_object()) schema(pointer, "expected an object of numbers");
  ParamMap out;
  for (const auto& [key, value] : v.items()) out[key] = number(value, child(pointer, key));
  return out;
}

std::array<double, 2> interval(const Json& v, const std::string& pointer) {
  if (!v.is_array() || v.size() != 2) schema(pointer, "expected [lower, upper]");
  const double lo = number(v[0], child(pointer, 0));
  const double hi = number(v[1], child(pointer, 1));
  if (!(hi > lo)) schema(pointer, "upper bound must exceed lower bound");
  return {lo, hi};
}

void parse_grid(const Json& g, const std::string& ptr, Config& c) {
  expect_keys(g, ptr, {"dim", "bounds", "cells", "probe_cells"});
  if (g.contains("dim")) c.dim = integer(g["dim"], child(ptr, "dim"), 1, 2);
  c.cells = c.dim == 1 ? 1024 : 64;
  c.probe_cells = c.dim == 1 ? 128 : 16;
  c.lower = {-1.0, -1.0};
  c.side = 2.0;
  if (g.contains("bounds")) {
    const Json& b = g["bounds"];
    const std::string bp = child(ptr, "bounds");
    if (b.is_array() && b.size() == 2 && b[0].is_array()) {
      if (c.dim != 2) schema(bp, "per-axis bounds need dim 2");
      const auto x = interval(b[0], child(bp, 0));
      const auto y = interval(b[1], child(bp, 1));
      if (std::abs((x[1] - x[0]) - (y[1] - y[0])) > 1e-12 * (x[1] - x[0])) {
        schema(bp, "the domain must be a square: both axes need the same length");
      }
      c.lower = {x[0], y[0]};
      c.side = x[1] - x[0];
    } else {
      const auto x = interval(b, bp);
      c.lower = {x[0], x[0]};
      c.side = x[1] - x[0];
    }
  }
  if (g.contains("cells")) c.cells = integer(g["cells"], child(ptr, "cells"), 4, 1 << 16);
  if (g.contains("probe_cells")) {
    c.probe_cells = integer(g["probe_cells"], child(ptr, "probe_cells"), 4, 1 << 16);
  }
  if (c.dim == 2 && c.cells > 512) schema(child(ptr, "cells"), "2D grids are limited to 512 cells per axis");
}

ExponentSpec parse_exponent(const Json& e, const std::string& ptr, const ExponentSpec& fallback) {
  expect_keys(e, ptr, {"family", "params", "p_infty"});
  ExponentSpec spec;
  spec.family = e.contains("family") ? string(e["family"], child(ptr, "family")) : fallback.family;
  if (e.contains("params")) {
    spec.params = params(e["params"], child(ptr, "params"));
  } else if (spec.family == fallback.family) {
    spec.params = fallback.params;
  }
  if (e.contains("p_infty")) spec.params["p_infty"] = number(e["p_infty"], child(ptr, "p_infty"));
  return spec;
}

}  // namespace

Grid Config::main_grid() const { return Grid(dim, {lower[0], lower[1]}, side, cells); }

Grid Config::probe_grid() const { return Grid(dim, {lower[0], lower[1]}, side, probe_cells); }

MaximalConfig Config::schedule(const Grid& grid) const {
  const int n = grid.cells_per_axis();
  MaximalConfig cfg;
  if (schedule_mode == "full") {
    cfg.widths = full_schedule(n);
  } else if (schedule_mode == "geometric") {
    cfg.widths = geometric_schedule(n);
  } else if (schedule_mode == "explicit") {
    WidthSchedule w;
    for (int x : schedule_widths) {
      if (x <= n) w.push_back(x);
    }
    if (w.empty()) {
      fail(ErrorCode::schema, "config /schedule/widths: no width fits a " + std::to_string(n) +
                                  "-cell grid");
    }
    cfg.widths = normalize_schedule(std::move(w), n);
  }
  return cfg;
}

Config parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::schema, std::string("config is not valid JSON: ") + e.what());
  }
  Config c;
  expect_keys(doc, "",
              {"grid", "exponent", "r_exponent", "beta", "alpha", "symbol", "family_seed",
               "schedule", "tolerances", "lemma_small_cube", "lemma_gamma", "checks"});
  parse_grid(doc.contains("grid") ? doc["grid"] : Json::object(), "/grid", c);
  if (doc.contains("exponent")) c.exponent = parse_exponent(doc["exponent"], "/exponent", c.exponent);
  if (doc.contains("r_exponent")) {
    c.r_exponent = parse_exponent(doc["r_exponent"], "/r_exponent", c.r_exponent);
  }
  if (doc.contains("beta")) c.beta = number(doc["beta"], "/beta");
  if (doc.contains("alpha")) c.alpha = number(doc["alpha"], "/alpha");
  if (doc.contains("symbol")) {
    const Json& s = doc["symbol"];
    expect_keys(s, "/symbol", {"family", "params"});
    if (s.contains("family")) c.symbol.family = string(s["family"], "/symbol/family");
    if (s.contains("params")) c.symbol.params = params(s["params"], "/symbol/params");
  }
  if (doc.contains("family_seed")) {
    const Json& s = doc["family_seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      schema("/family_seed", "expected a non-negative integer");
    }
    c.family_seed = s.get<std::uint64_t>();
  }
  if (doc.contains("schedule")) {
    const Json& s = doc["schedule"];
    expect_keys(s, "/schedule", {"mode", "widths"});
    if (s.contains("mode")) c.schedule_mode = string(s["mode"], "/schedule/mode");
    if (c.schedule_mode != "auto" && c.schedule_mode != "full" && c.schedule_mode != "geometric" &&
        c.schedule_mode != "explicit") {
      schema("/schedule/mode", "expected one of auto, full, geometric, explicit");
    }
    if (s.contains("widths")) {
      const Json& w = s["widths"];
      if (!w.is_array()) schema("/schedule/widths", "expected an array of integers");
      for (std::size_t k = 0; k < w.size(); ++k) {
        c.schedule_widths.push_back(integer(w[k], child("/schedule/widths", k), 1, 1 << 16));
      }
    }
    if (c.schedule_mode == "explicit" && c.schedule_widths.empty()) {
      schema("/schedule/widths", "explicit mode needs a non-empty width list");
    }
  }
  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    expect_keys(t, "/tolerances", {"modular", "bracket", "max_iterations"});
    if (t.contains("modular")) c.tolerances.modular = number(t["modular"], "/tolerances/modular");
    if (t.contains("bracket")) c.tolerances.bracket = number(t["bracket"], "/tolerances/bracket");
    if (t.contains("max_iterations")) {
      c.tolerances.max_iterations =
          integer(t["max_iterations"], "/tolerances/max_iterations", 1, 100000);
    }
    if (!(c.tolerances.modular > 0.0)) schema("/tolerances/modular", "expected a positive number");
    if (!(c.tolerances.bracket >= 0.0)) schema("/tolerances/bracket", "expected a number >= 0");
  }
  if (doc.contains("lemma_small_cube")) {
    c.lemma_small_cube = number(doc["lemma_small_cube"], "/lemma_small_cube");
    if (!(c.lemma_small_cube > 0.0)) schema("/lemma_small_cube", "expected a positive number");
  }
  if (doc.contains("lemma_gamma")) {
    c.lemma_gamma = number(doc["lemma_gamma"], "/lemma_gamma");
    if (!(*c.lemma_gamma >= 0.0 && *c.lemma_gamma < c.dim)) {
      schema("/lemma_gamma", "expected a number in [0, n)");
    }
  }
  if (doc.contains("checks")) {
    const Json& k = doc["checks"];
    if (!k.is_array()) schema("/checks", "expected an array of check ids");
    for (std::size_t i = 0; i < k.size(); ++i) c.checks.push_back(string(k[i], child("/checks", i)));
  }
  if (c.schedule_mode == "explicit") {
    const int smallest = std::min(c.cells, c.probe_cells);
    if (*std::min_element(c.schedule_widths.begin(), c.schedule_widths.end()) > smallest) {
      schema("/schedule/widths", "no width fits a " + std::to_string(smallest) + "-cell grid");
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
}

Json Config::to_json() const {
  const auto exponent_json = [](const ExponentSpec& e) {
    Json j;
    j["family"] = e.family;
    Json p = Json::object();
    for (const auto& [k, v] : e.params) p[k] = v;
    j["params"] = p;
    return j;
  };
  Json j;
  Json g;
  g["dim"] = dim;
  g["bounds"] = dim == 1 ? Json::array({lower[0], lower[0] + side})
                         : Json::array({Json::array({lower[0], lower[0] + side}),
                                        Json::array({lower[1], lower[1] + side})});
  g["cells"] = cells;
  g["probe_cells"] = probe_cells;
  j["grid"] = g;
  j["exponent"] = exponent_json(exponent);
  j["r_exponent"] = exponent_json(r_exponent);
  j["beta"] = beta;
  j["alpha"] = alpha;
  j["symbol"] = exponent_json(symbol);
  j["family_seed"] = family_seed;
  j["schedule"] = {{"mode", schedule_mode}, {"widths", schedule_widths}};
  j["tolerances"] = {{"modular", tolerances.modular},
                     {"bracket", tolerances.bracket},
                     {"max_iterations", tolerances.max_iterations}};
  j["lemma_small_cube"] = lemma_small_cube;
  j["lemma_gamma"] = gamma();
  j["checks"] = checks;
  return j;
}

}  // namespace varlip::harness
