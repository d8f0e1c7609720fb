#include "varlip/reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "varlip/norms.hpp"

namespace varlip::reference {

namespace {

std::vector<std::size_t> cube_cells(const Grid& grid, const Cube& q) {
  std::vector<std::size_t> cells;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (q.contains(grid, k)) cells.push_back(k);
  }
  return cells;
}

WidthSchedule scope_widths(const Grid& grid, const Scope& scope) {
  if (scope.widths) return *scope.widths;
  return full_schedule(scope.restrict_to ? scope.restrict_to->width : grid.cells_per_axis());
}

// Visits each admissible cube containing x with the list of its cells.
template <class Visit>
void for_cubes_at(const Grid& grid, std::size_t x, const Scope& scope, Visit&& visit) {
  if (scope.restrict_to && !scope.restrict_to->contains(grid, x)) return;
  for (const Cube& q : cubes_containing(grid, x, scope_widths(grid, scope))) {
    if (scope.restrict_to && !scope.restrict_to->contains(q, grid.dim())) continue;
    visit(q, cube_cells(grid, q));
  }
}

double mean_over(const GridFunction& f, const std::vector<std::size_t>& cells) {
  double s = 0.0;
  for (std::size_t k : cells) s += f[k];
  return s / static_cast<double>(cells.size());
}

}  // namespace

GridFunction fractional_maximal(const GridFunction& f, const GridFunction& order,
                                const Scope& scope) {
  const Grid& grid = f.grid();
  const double hn = grid.cell_volume();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    for_cubes_at(grid, x, scope, [&](const Cube& q, const std::vector<std::size_t>& cells) {
      double integral = 0.0;
      for (std::size_t y : cells) integral += std::abs(f[y]) * hn;
      const double v = integral / std::pow(q.measure, 1.0 - order[x] / grid.dim());
      out[x] = std::max(out[x], v);
    });
  }
  return GridFunction(grid, std::move(out));
}

GridFunction sharp_maximal(const GridFunction& f, const Scope& scope) {
  const Grid& grid = f.grid();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    for_cubes_at(grid, x, scope, [&](const Cube&, const std::vector<std::size_t>& cells) {
      const double mean = mean_over(f, cells);
      double dev = 0.0;
      for (std::size_t y : cells) dev += std::abs(f[y] - mean);
      out[x] = std::max(out[x], dev / static_cast<double>(cells.size()));
    });
  }
  return GridFunction(grid, std::move(out));
}

GridFunction maximal_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                                const Scope& scope) {
  const Grid& grid = f.grid();
  const double hn = grid.cell_volume();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    for_cubes_at(grid, x, scope, [&](const Cube& q, const std::vector<std::size_t>& cells) {
      double integral = 0.0;
      for (std::size_t y : cells) integral += std::abs(b[x] - b[y]) * std::abs(f[y]) * hn;
      out[x] = std::max(out[x], integral / std::pow(q.measure, 1.0 - alpha / grid.dim()));
    });
  }
  return GridFunction(grid, std::move(out));
}

double pointwise_lipschitz_norm(const GridFunction& b, const GridFunction& delta) {
  const Grid& grid = b.grid();
  double best = 0.0;
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const Point cx = grid.center(x);
    for (std::size_t y = 0; y < grid.size(); ++y) {
      if (x == y) continue;
      const double d = distance(cx, grid.center(y), grid.dim());
      best = std::max(best, std::abs(b[x] - b[y]) / std::pow(d, delta[x]));
    }
  }
  return best;
}

double integral_lipschitz_norm(const GridFunction& b, double beta, const VariableExponent& p,
                               const Scope& scope, const NormTolerances& tol) {
  const Grid& grid = b.grid();
  const VariableExponent p_conj = conjugate(p);
  double best = 0.0;
  for (const Cube& q : enumerate_cubes(grid, scope_widths(grid, scope))) {
    const auto cells = cube_cells(grid, q);
    const double mean = mean_over(b, cells);
    double osc = 0.0;
    for (std::size_t y : cells) osc += std::abs(b[y] - mean) * grid.cell_volume();
    if (osc == 0.0) continue;
    const double chi = luxemburg_norm(indicator(grid, q), p_conj, tol).value;
    best = std::max(best, osc / (std::pow(q.measure, 1.0 / beta) * chi));
  }
  return best;
}

double bmo_norm(const GridFunction& b, const Scope& scope) {
  const Grid& grid = b.grid();
  double best = 0.0;
  for (const Cube& q : enumerate_cubes(grid, scope_widths(grid, scope))) {
    const auto cells = cube_cells(grid, q);
    const double mean = mean_over(b, cells);
    double dev = 0.0;
    for (std::size_t y : cells) dev += std::abs(b[y] - mean);
    best = std::max(best, dev / static_cast<double>(cells.size()));
  }
  return best;
}

GridFunction potential(const GridFunction& f, const GridFunction& delta) {
  const Grid& grid = f.grid();
  const int n = grid.dim();
  const double h = grid.spacing();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const Point cx = grid.center(x);
    const double d = delta[x];
    // Antiderivative of |t - x|^{d-1} in t.
    const auto F = [&](double t) {
      const double u = t - cx[0];
      return std::copysign(std::pow(std::abs(u), d), u) / d;
    };
    double s = 0.0;
    for (std::size_t y = 0; y < grid.size(); ++y) {
      const Point cy = grid.center(y);
      if (n == 1) {
        s += f[y] * (F(cy[0] + 0.5 * h) - F(cy[0] - 0.5 * h));
      } else if (y != x) {
        s += f[y] * std::pow(distance(cx, cy, n), d - n) * grid.cell_volume();
      }
    }
    out[x] = s;
  }
  return GridFunction(grid, std::move(out));
}

}  // namespace varlip::reference
