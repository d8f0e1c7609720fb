#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"
#include "varlip/harness/json_out.hpp"
#include "varlip/norms.hpp"
#include "varlip/operators.hpp"

namespace varlip::harness {

struct ExponentSpec {
  std::string family;
  ParamMap params;
};

struct Config {
  int dim = 1;
  std::array<double, 2> lower{-1.0, -1.0};
  double side = 2.0;
  int cells = 1024;
  int probe_cells = 128;

  ExponentSpec exponent{"log_decay", {{"p_infty", 3.5}, {"c", 0.5}}};
  ExponentSpec r_exponent{"constant", {{"p0", 2.0}}};
  double beta = 2.0;
  double alpha = 0.0;
  ExponentSpec symbol{"power", {}};
  std::uint64_t family_seed = 20240601;

  std::string schedule_mode = "auto";  // auto, full, geometric, explicit
  std::vector<int> schedule_widths;

  NormTolerances tolerances;
  double lemma_small_cube = 0.1;
  std::optional<double> lemma_gamma;  // default 0.1 n
  std::vector<std::string> checks;

  Grid main_grid() const;
  Grid probe_grid() const;
  double gamma() const { return lemma_gamma ? *lemma_gamma : 0.1 * dim; }
  // Cube schedule for operator calls on `grid`.
  MaximalConfig schedule(const Grid& grid) const;
  // Normalised echo written into the report.
  Json to_json() const;
};

// Throws Error(schema) naming the offending JSON pointer.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace varlip::harness
