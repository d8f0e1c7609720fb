#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varlip/grid.hpp"

namespace varlip {

// Which cubes the maximal operators take their supremum over. An unset
// schedule means: every width in 1D, and in 2D every width up to 64 cells per
// axis, geometric {1, 2, 4, ..., N} beyond.
struct MaximalConfig {
  std::optional<WidthSchedule> widths;
  std::optional<Cube> restrict_to;
};

// Cubes considered by an operator call: a square window of the grid plus the
// widths that fit in it.
struct CubeRegion {
  std::array<int, 2> lo{0, 0};
  int extent = 0;
  WidthSchedule widths;
  bool approximate = false;  // widths are not every size that fits

  bool contains(const Grid& grid, std::size_t flat) const noexcept;
};

WidthSchedule default_schedule(const Grid& grid);
CubeRegion resolve_region(const Grid& grid, const MaximalConfig& cfg);

// Flags a report should carry for results computed with this configuration.
std::vector<std::string> schedule_flags(const Grid& grid, const MaximalConfig& cfg);

// For one width: at each cell of the region, the maximum of `start_values`
// over the cubes of that width that contain the cell. `start_values` is laid
// out row-major over (extent - width + 1)^dim starts; the result over
// extent^dim cells. Monotone-deque sliding maximum, separable in 2D.
std::vector<double> window_max_over_starts(int dim, int extent, int width,
                                           const std::vector<double>& start_values);

GridFunction hl_maximal(const GridFunction& f, const MaximalConfig& cfg = {});
GridFunction fractional_maximal(const GridFunction& f, double alpha, const MaximalConfig& cfg = {});
GridFunction sharp_maximal(const GridFunction& f, const MaximalConfig& cfg = {});
// The order delta(x) is fixed by the evaluation point.
GridFunction variable_fractional_maximal(const GridFunction& f, const GridFunction& delta,
                                         const MaximalConfig& cfg = {});

struct RestrictedMaximal {
  GridFunction values;  // zero outside `support`: no admissible cube there
  Cube support;
  bool approximate = false;
};

// Supremum over cubes Q with x in Q and Q inside q0. gamma >= 0 (may exceed n).
RestrictedMaximal restricted_fractional_maximal(const GridFunction& f, double gamma,
                                                const Cube& q0,
                                                std::optional<WidthSchedule> widths = {});

enum class PotentialMode {
  automatic,         // analytic_cell in 1D, exclude_diagonal in 2D
  analytic_cell,     // 1D only: kernel integrated exactly over every cell
  exclude_diagonal,  // midpoint kernel off the diagonal, diagonal cell dropped
};

PotentialMode resolve_potential_mode(int dim, PotentialMode mode);

// I f(x) = integral f(y) |x - y|^{delta(x) - n} dy, for delta in (0, n).
GridFunction potential(const GridFunction& f, const GridFunction& delta,
                       PotentialMode mode = PotentialMode::automatic);

namespace detail {

// Shared kernel of the fractional family: max over widths of
// (box average of |f|) * |Q|^{order(x)/n}. `order` is per cell of the grid,
// or a single value broadcast to every cell.
GridFunction fractional_family(const GridFunction& f, const CubeRegion& region,
                               const std::vector<double>& order);

}  // namespace detail

}  // namespace varlip
