#include "varlip/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "varlip/error.hpp"
#include "varlip/summation.hpp"

namespace varlip {

namespace {

// Cap for the exhaustive default schedule in 2D.
constexpr int kFullSchedule2DCap = 64;

// out[x * out_stride] = max of in[s * in_stride] over starts s of width-w
// windows containing x, for x in [0, extent).
void sliding_max(const double* in, std::size_t in_stride, int starts, int width, int extent,
                 double* out, std::size_t out_stride) {
  std::deque<int> dq;
  for (int x = 0; x < extent; ++x) {
    if (x < starts) {
      const double v = in[static_cast<std::size_t>(x) * in_stride];
      while (!dq.empty() && in[static_cast<std::size_t>(dq.back()) * in_stride] <= v) {
        dq.pop_back();
      }
      dq.push_back(x);
    }
    while (dq.front() < x - width + 1) dq.pop_front();
    out[static_cast<std::size_t>(x) * out_stride] =
        in[static_cast<std::size_t>(dq.front()) * in_stride];
  }
}

int cell_count(int dim, int width) { return dim == 1 ? width : width * width; }

template <class StartValue>
std::vector<double> start_table(int dim, int extent, int width, StartValue&& value) {
  const int starts = extent - width + 1;
  const int rows = dim == 1 ? 1 : starts;
  std::vector<double> b(static_cast<std::size_t>(rows) * static_cast<std::size_t>(starts));
  for (int sy = 0; sy < rows; ++sy) {
    for (int sx = 0; sx < starts; ++sx) {
      b[static_cast<std::size_t>(sy) * starts + sx] = value(sx, sy);
    }
  }
  return b;
}

template <class Visit>
void for_region_cells(const Grid& grid, const CubeRegion& region, Visit&& visit) {
  const int rows = grid.dim() == 1 ? 1 : region.extent;
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < region.extent; ++x) {
      const std::size_t local = static_cast<std::size_t>(y) * region.extent + x;
      const std::size_t global =
          grid.flat(region.lo[0] + x, grid.dim() == 1 ? 0 : region.lo[1] + y);
      visit(local, global);
    }
  }
}

void check_same_grid(const GridFunction& a, const GridFunction& b, const char* what) {
  if (!(a.grid() == b.grid())) fail(ErrorCode::argument, std::string(what) + " grids differ");
}

}  // namespace

bool CubeRegion::contains(const Grid& grid, std::size_t flat) const noexcept {
  const auto idx = grid.index(flat);
  for (int axis = 0; axis < grid.dim(); ++axis) {
    if (idx[axis] < lo[axis] || idx[axis] >= lo[axis] + extent) return false;
  }
  return true;
}

WidthSchedule default_schedule(const Grid& grid) {
  const int n = grid.cells_per_axis();
  if (grid.dim() == 1 || n <= kFullSchedule2DCap) return full_schedule(n);
  return geometric_schedule(n);
}

CubeRegion resolve_region(const Grid& grid, const MaximalConfig& cfg) {
  CubeRegion region;
  if (cfg.restrict_to) {
    const Cube q0 = Cube::make(grid, cfg.restrict_to->start, cfg.restrict_to->width);
    region.lo = q0.start;
    region.extent = q0.width;
  } else {
    region.extent = grid.cells_per_axis();
  }
  const int e = region.extent;
  if (cfg.widths) {
    region.widths = normalize_schedule(*cfg.widths, e);
  } else if (grid.dim() == 1 || e <= kFullSchedule2DCap) {
    region.widths = full_schedule(e);
  } else {
    region.widths = geometric_schedule(e);
  }
  region.approximate = region.widths.size() != static_cast<std::size_t>(e);
  return region;
}

std::vector<std::string> schedule_flags(const Grid& grid, const MaximalConfig& cfg) {
  const CubeRegion region = resolve_region(grid, cfg);
  std::vector<std::string> flags;
  flags.push_back(region.approximate ? "schedule:partial(approximate-sup)" : "schedule:full");
  if (cfg.restrict_to) flags.push_back("restricted-to-cube");
  return flags;
}

std::vector<double> window_max_over_starts(int dim, int extent, int width,
                                           const std::vector<double>& start_values) {
  const int starts = extent - width + 1;
  if (width < 1 || starts < 1) fail(ErrorCode::argument, "window width does not fit the extent");
  const std::size_t e = static_cast<std::size_t>(extent);
  const std::size_t l = static_cast<std::size_t>(starts);
  if (dim == 1) {
    std::vector<double> out(e);
    sliding_max(start_values.data(), 1, starts, width, extent, out.data(), 1);
    return out;
  }
  // Rows of starts first, then down the columns.
  std::vector<double> rows(l * e);
  for (std::size_t sy = 0; sy < l; ++sy) {
    sliding_max(start_values.data() + sy * l, 1, starts, width, extent, rows.data() + sy * e, 1);
  }
  std::vector<double> out(e * e);
  for (std::size_t x = 0; x < e; ++x) {
    sliding_max(rows.data() + x, e, starts, width, extent, out.data() + x, e);
  }
  return out;
}

namespace detail {

GridFunction fractional_family(const GridFunction& f, const CubeRegion& region,
                               const std::vector<double>& order) {
  const Grid& grid = f.grid();
  const int dim = grid.dim();
  const bool broadcast = order.size() == 1;
  const GridFunction magnitude = f.abs();
  const PrefixTable table(grid, magnitude.values());
  std::vector<double> out(grid.size(), 0.0);

  for (int w : region.widths) {
    const auto sums = start_table(dim, region.extent, w, [&](int sx, int sy) {
      return table.box_sum({region.lo[0] + sx, region.lo[1] + sy}, w);
    });
    const auto best = window_max_over_starts(dim, region.extent, w, sums);
    const double count = cell_count(dim, w);
    const double measure = cube_measure(grid, w);
    // |Q|^{order/n} depends only on the width and the evaluation point, so it
    // is applied after the max over same-width cubes.
    const double shared = broadcast ? std::pow(measure, order[0] / dim) : 0.0;
    for_region_cells(grid, region, [&](std::size_t local, std::size_t global) {
      const double weight = broadcast ? shared : std::pow(measure, order[global] / dim);
      out[global] = std::max(out[global], (best[local] / count) * weight);
    });
  }
  return GridFunction(grid, std::move(out));
}

}  // namespace detail

GridFunction hl_maximal(const GridFunction& f, const MaximalConfig& cfg) {
  return fractional_maximal(f, 0.0, cfg);
}

GridFunction fractional_maximal(const GridFunction& f, double alpha, const MaximalConfig& cfg) {
  const int n = f.grid().dim();
  if (!(alpha >= 0.0 && alpha < n)) {
    fail(ErrorCode::argument, "fractional order alpha must lie in [0, " + std::to_string(n) + ")");
  }
  return detail::fractional_family(f, resolve_region(f.grid(), cfg), {alpha});
}

GridFunction variable_fractional_maximal(const GridFunction& f, const GridFunction& delta,
                                         const MaximalConfig& cfg) {
  check_same_grid(f, delta, "function and order");
  const int n = f.grid().dim();
  for (double d : delta.values()) {
    if (!(d >= 0.0 && d < n)) {
      fail(ErrorCode::argument, "variable order delta(x) must lie in [0, " + std::to_string(n) + ")");
    }
  }
  return detail::fractional_family(f, resolve_region(f.grid(), cfg),
                                   std::vector<double>(delta.values().begin(), delta.values().end()));
}

GridFunction sharp_maximal(const GridFunction& f, const MaximalConfig& cfg) {
  const Grid& grid = f.grid();
  const int dim = grid.dim();
  const CubeRegion region = resolve_region(grid, cfg);
  const PrefixTable table(grid, f.values());
  const auto values = f.values();
  std::vector<double> out(grid.size(), 0.0);

  for (int w : region.widths) {
    const double count = cell_count(dim, w);
    const int rows = dim == 1 ? 1 : w;
    const auto osc = start_table(dim, region.extent, w, [&](int sx, int sy) {
      const int x0 = region.lo[0] + sx;
      const int y0 = region.lo[1] + sy;
      const double mean = table.box_sum({x0, y0}, w) / count;
      double dev = 0.0;
      for (int dy = 0; dy < rows; ++dy) {
        const std::size_t row = grid.flat(x0, dim == 1 ? 0 : y0 + dy);
        for (int dx = 0; dx < w; ++dx) dev += std::abs(values[row + dx] - mean);
      }
      return dev / count;
    });
    const auto best = window_max_over_starts(dim, region.extent, w, osc);
    for_region_cells(grid, region, [&](std::size_t local, std::size_t global) {
      out[global] = std::max(out[global], best[local]);
    });
  }
  return GridFunction(grid, std::move(out));
}

RestrictedMaximal restricted_fractional_maximal(const GridFunction& f, double gamma,
                                                const Cube& q0,
                                                std::optional<WidthSchedule> widths) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    fail(ErrorCode::argument, "restricted maximal order gamma must be >= 0");
  }
  MaximalConfig cfg{std::move(widths), q0};
  const CubeRegion region = resolve_region(f.grid(), cfg);
  return RestrictedMaximal{detail::fractional_family(f, region, {gamma}),
                           Cube::make(f.grid(), q0.start, q0.width), region.approximate};
}

PotentialMode resolve_potential_mode(int dim, PotentialMode mode) {
  if (mode == PotentialMode::automatic) {
    return dim == 1 ? PotentialMode::analytic_cell : PotentialMode::exclude_diagonal;
  }
  if (mode == PotentialMode::analytic_cell && dim != 1) {
    fail(ErrorCode::argument, "analytic_cell potential mode is only available in 1D");
  }
  return mode;
}

GridFunction potential(const GridFunction& f, const GridFunction& delta, PotentialMode mode) {
  check_same_grid(f, delta, "function and order");
  const Grid& grid = f.grid();
  const int dim = grid.dim();
  for (double d : delta.values()) {
    if (!(d > 0.0 && d < dim)) {
      fail(ErrorCode::argument, "potential order delta(x) must lie in (0, " + std::to_string(dim) + ")");
    }
  }
  mode = resolve_potential_mode(dim, mode);
  const double h = grid.spacing();
  std::vector<double> out(grid.size(), 0.0);

  if (mode == PotentialMode::analytic_cell) {
    // Integral of |t|^{d-1} over a cell at centre distance k h, exact.
    const int n = grid.cells_per_axis();
    for (int x = 0; x < n; ++x) {
      const double d = delta[static_cast<std::size_t>(x)];
      CompensatedSum acc;
      for (int y = 0; y < n; ++y) {
        const double fy = f[static_cast<std::size_t>(y)];
        if (fy == 0.0) continue;
        double kernel;
        if (y == x) {
          kernel = 2.0 * std::pow(0.5 * h, d) / d;
        } else {
          const double dist = std::abs(x - y) * h;
          kernel = (std::pow(dist + 0.5 * h, d) - std::pow(dist - 0.5 * h, d)) / d;
        }
        acc.add(fy * kernel);
      }
      out[static_cast<std::size_t>(x)] = acc.value();
    }
    return GridFunction(grid, std::move(out));
  }

  std::vector<Point> centers(grid.size());
  for (std::size_t k = 0; k < centers.size(); ++k) centers[k] = grid.center(k);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const double power = delta[x] - dim;
    CompensatedSum acc;
    for (std::size_t y = 0; y < grid.size(); ++y) {
      if (y == x || f[y] == 0.0) continue;
      acc.add(f[y] * std::pow(distance(centers[x], centers[y], dim), power));
    }
    out[x] = acc.value() * grid.cell_volume();
  }
  return GridFunction(grid, std::move(out));
}

}  // namespace varlip
