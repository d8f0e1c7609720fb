#include "varlip/lipschitz.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "varlip/error.hpp"
#include "varlip/operators.hpp"
#include "varlip/summation.hpp"

namespace varlip {

namespace {

constexpr int kPairSubsample1D = 2048;
constexpr std::size_t kPairSubsample2D = 16384;

void check_delta(const GridFunction& delta, int n) {
  for (double d : delta.values()) {
    if (!(d >= 0.0 && d < n)) {
      fail(ErrorCode::argument, "delta(x) must lie in [0, " + std::to_string(n) + ")");
    }
  }
}

// integral over Q of |b - b_Q|, summed directly.
double oscillation(const Grid& grid, std::span<const double> b, const Cube& q, double mean) {
  CompensatedSum acc;
  const int rows = grid.dim() == 1 ? 1 : q.width;
  for (int dy = 0; dy < rows; ++dy) {
    const std::size_t row = grid.flat(q.start[0], grid.dim() == 1 ? 0 : q.start[1] + dy);
    for (int dx = 0; dx < q.width; ++dx) acc.add(std::abs(b[row + dx] - mean));
  }
  return acc.value() * grid.cell_volume();
}

}  // namespace

PointwiseLipschitz pointwise_lipschitz_norm(const GridFunction& b, const GridFunction& delta,
                                            const PairSampling& sampling) {
  const Grid& grid = b.grid();
  if (!(delta.grid() == grid)) fail(ErrorCode::argument, "symbol and delta grids differ");
  check_delta(delta, grid.dim());
  std::vector<Point> centers(grid.size());
  for (std::size_t k = 0; k < centers.size(); ++k) centers[k] = grid.center(k);
  const bool large = grid.dim() == 1 ? grid.cells_per_axis() > kPairSubsample1D
                                     : grid.size() > kPairSubsample2D;
  PointwiseLipschitz out;
  const auto consider = [&](std::size_t x, std::size_t y, double diff, double dist) {
    const double v = diff / std::pow(dist, delta[x]);
    if (v > out.norm) {
      out.norm = v;
      out.witness = {x, y};
    }
  };
  out.approximate = for_each_pair(grid, sampling, large, [&](std::size_t x, std::size_t y) {
    const double diff = std::abs(b[x] - b[y]);
    if (diff == 0.0) return;
    const double dist = distance(centers[x], centers[y], grid.dim());
    consider(x, y, diff, dist);
    consider(y, x, diff, dist);
  });
  return out;
}

IntegralLipschitzEvaluator::IntegralLipschitzEvaluator(double beta, const VariableExponent& p,
                                                       std::optional<WidthSchedule> widths,
                                                       const NormTolerances& tol)
    : grid_(p.grid()) {
  if (!(beta > 1.0) || !std::isfinite(beta)) fail(ErrorCode::argument, "beta must exceed 1");
  const CubeRegion region = resolve_region(grid_, MaximalConfig{std::move(widths), {}});
  const VariableExponent p_conj = conjugate(p);
  approximate_ = region.approximate;
  cubes_ = enumerate_cubes(grid_, region.widths);
  scale_.reserve(cubes_.size());
  for (const Cube& q : cubes_) {
    scale_.push_back(std::pow(q.measure, 1.0 / beta) * indicator_norm(q, p_conj, tol).value);
  }
}

IntegralLipschitz IntegralLipschitzEvaluator::operator()(const GridFunction& b) const {
  if (!(b.grid() == grid_)) fail(ErrorCode::argument, "symbol and exponent grids differ");
  const CubeAverager averager(b);
  IntegralLipschitz out;
  out.approximate = approximate_;
  for (std::size_t k = 0; k < cubes_.size(); ++k) {
    const Cube& q = cubes_[k];
    const double osc = oscillation(grid_, b.values(), q, averager.average(q));
    if (osc == 0.0) continue;
    const double v = osc / scale_[k];
    if (v > out.norm) {
      out.norm = v;
      out.witness = q;
    }
  }
  return out;
}

IntegralLipschitz integral_lipschitz_norm(const GridFunction& b, double beta,
                                          const VariableExponent& p,
                                          std::optional<WidthSchedule> widths,
                                          const NormTolerances& tol) {
  if (!(p.grid() == b.grid())) fail(ErrorCode::argument, "symbol and exponent grids differ");
  return IntegralLipschitzEvaluator(beta, p, std::move(widths), tol)(b);
}

IntegralLipschitz integral_lipschitz_norm(const GridFunction& b, const ExponentSystem& sys,
                                          std::optional<WidthSchedule> widths,
                                          const NormTolerances& tol) {
  return integral_lipschitz_norm(b, sys.beta(), sys.p(), std::move(widths), tol);
}

double diameter_factor(int dim, double d) noexcept {
  return dim == 1 ? 1.0 : std::pow(static_cast<double>(dim), 0.5 * d);
}

OscillationBound oscillation_bound_check(const GridFunction& b, const GridFunction& delta,
                                         const Cube& q, double norm, double slack) {
  const Grid& grid = b.grid();
  if (!(delta.grid() == grid)) fail(ErrorCode::argument, "symbol and delta grids differ");
  const Cube cube = Cube::make(grid, q.start, q.width);
  const double mean = cube_average(b, cube);
  const int n = grid.dim();
  OscillationBound out;
  out.worst_excess = -std::numeric_limits<double>::infinity();
  const int rows = n == 1 ? 1 : cube.width;
  for (int dy = 0; dy < rows; ++dy) {
    for (int dx = 0; dx < cube.width; ++dx) {
      const std::size_t x = grid.flat(cube.start[0] + dx, n == 1 ? 0 : cube.start[1] + dy);
      const double lhs = std::abs(b[x] - mean);
      const double rhs = diameter_factor(n, delta[x]) * norm * std::pow(cube.measure, delta[x] / n);
      const double excess = lhs - rhs;
      if (excess > out.worst_excess) {
        out.worst_excess = excess;
        out.worst_cell = x;
      }
      if (rhs > 0.0) {
        out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
      } else if (lhs > 0.0) {
        out.worst_ratio = std::numeric_limits<double>::infinity();
      }
    }
  }
  out.passed = out.worst_excess <= slack;
  return out;
}

}  // namespace varlip
