#include "varlip/commutators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "varlip/error.hpp"

namespace varlip {

namespace {

void check_alpha(double alpha, int n) {
  if (!(alpha >= 0.0 && alpha < n)) {
    fail(ErrorCode::argument, "fractional order alpha must lie in [0, " + std::to_string(n) + ")");
  }
}

// Max over widths and over the cubes of each width that contain `cell` and
// lie in `region`, of (box sum / count) * |Q|^{alpha/n}. `box` returns the sum
// of the integrand over a cube given by its global start.
template <class BoxSum>
double sup_over_cubes(const Grid& grid, const CubeRegion& region, std::size_t cell,
                      const std::vector<double>& weights, BoxSum&& box) {
  const int dim = grid.dim();
  const auto idx = grid.index(cell);
  const int lx = idx[0] - region.lo[0];
  const int ly = dim == 1 ? 0 : idx[1] - region.lo[1];
  double best = 0.0;
  for (std::size_t k = 0; k < region.widths.size(); ++k) {
    const int w = region.widths[k];
    const double count = dim == 1 ? w : static_cast<double>(w) * w;
    const int last = region.extent - w;
    const int x0 = std::max(0, lx - w + 1), x1 = std::min(lx, last);
    const int y0 = dim == 1 ? 0 : std::max(0, ly - w + 1);
    const int y1 = dim == 1 ? 0 : std::min(ly, last);
    double top = 0.0;
    for (int sy = y0; sy <= y1; ++sy) {
      for (int sx = x0; sx <= x1; ++sx) {
        top = std::max(top, box({region.lo[0] + sx, region.lo[1] + sy}, w));
      }
    }
    best = std::max(best, (top / count) * weights[k]);
  }
  return best;
}

}  // namespace

GridFunction maximal_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                                const MaximalConfig& cfg, CommutatorKernel kernel) {
  const Grid& grid = f.grid();
  if (!(b.grid() == grid)) fail(ErrorCode::argument, "symbol and function grids differ");
  const int n = grid.dim();
  check_alpha(alpha, n);
  const CubeRegion region = resolve_region(grid, cfg);
  std::vector<double> weights;
  for (int w : region.widths) weights.push_back(std::pow(cube_measure(grid, w), alpha / n));

  const auto bv = b.values();
  const GridFunction af = f.abs();
  const auto fv = af.values();
  std::vector<double> out(grid.size(), 0.0);
  std::vector<double> work(grid.size());

  if (kernel == CommutatorKernel::direct) {
    for (std::size_t x = 0; x < grid.size(); ++x) {
      if (!region.contains(grid, x)) continue;
      for (std::size_t y = 0; y < grid.size(); ++y) work[y] = std::abs(bv[x] - bv[y]) * fv[y];
      const PrefixTable table(grid, work);
      out[x] = sup_over_cubes(grid, region, x, weights, [&](std::array<int, 2> s, int w) {
        return table.box_sum(s, w);
      });
    }
    return GridFunction(grid, std::move(out));
  }

  // sum |b(x) - b(y)| |f(y)| = b(x) (2 A - T1) - (2 B - T2), where A and B sum
  // |f| and b|f| over the cells with b(y) <= b(x), T1 and T2 over all cells.
  std::vector<double> bf(grid.size());
  for (std::size_t y = 0; y < grid.size(); ++y) bf[y] = bv[y] * fv[y];
  const PrefixTable t1(grid, fv);
  const PrefixTable t2(grid, bf);
  std::vector<double> low_b(grid.size());
  for (std::size_t x = 0; x < grid.size(); ++x) {
    if (!region.contains(grid, x)) continue;
    const double level = bv[x];
    for (std::size_t y = 0; y < grid.size(); ++y) {
      const bool low = bv[y] <= level;
      work[y] = low ? fv[y] : 0.0;
      low_b[y] = low ? bf[y] : 0.0;
    }
    const PrefixTable a(grid, work);
    const PrefixTable bb(grid, low_b);
    out[x] = sup_over_cubes(grid, region, x, weights, [&](std::array<int, 2> s, int w) {
      const double v = level * (2.0 * a.box_sum(s, w) - t1.box_sum(s, w)) -
                       (2.0 * bb.box_sum(s, w) - t2.box_sum(s, w));
      return std::max(v, 0.0);
    });
  }
  return GridFunction(grid, std::move(out));
}

GridFunction nonlinear_fractional_commutator(const GridFunction& b, const GridFunction& f,
                                             double alpha, const MaximalConfig& cfg) {
  if (!(b.grid() == f.grid())) fail(ErrorCode::argument, "symbol and function grids differ");
  check_alpha(alpha, f.grid().dim());
  return b * fractional_maximal(f, alpha, cfg) - fractional_maximal(b * f, alpha, cfg);
}

GridFunction nonlinear_sharp_commutator(const GridFunction& b, const GridFunction& f,
                                        const MaximalConfig& cfg) {
  if (!(b.grid() == f.grid())) fail(ErrorCode::argument, "symbol and function grids differ");
  return b * sharp_maximal(f, cfg) - sharp_maximal(b * f, cfg);
}

AlphaZeroCommutators specialize_alpha_zero(const GridFunction& b, const GridFunction& f,
                                           const MaximalConfig& cfg) {
  return {maximal_commutator(b, f, 0.0, cfg), nonlinear_fractional_commutator(b, f, 0.0, cfg)};
}

}  // namespace varlip
