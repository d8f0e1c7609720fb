#include "varlip/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "varlip/error.hpp"
#include "varlip/summation.hpp"

namespace varlip {

namespace {

// Prefix sums switch to compensated accumulation at this size.
constexpr int kCompensatedPrefixCells = 512;

void check_cube(const Grid& grid, const Cube& q) {
  for (int axis = 0; axis < grid.dim(); ++axis) {
    if (q.width < 1 || q.start[axis] < 0 ||
        q.start[axis] + q.width > grid.cells_per_axis()) {
      std::ostringstream msg;
      msg << "cube (start " << q.start[0];
      if (grid.dim() == 2) msg << "," << q.start[1];
      msg << ", width " << q.width << ") lies outside the grid of "
          << grid.cells_per_axis() << " cells per axis";
      fail(ErrorCode::domain, msg.str());
    }
  }
}

}  // namespace

Grid::Grid(int dim, Point lower, double side, int cells)
    : dim_(dim), lower_(lower), side_(side), cells_(cells) {
  if (dim != 1 && dim != 2) fail(ErrorCode::argument, "grid dimension must be 1 or 2");
  if (cells < 2) fail(ErrorCode::argument, "grid needs at least 2 cells per axis");
  if (!(side > 0.0) || !std::isfinite(side)) {
    fail(ErrorCode::argument, "grid side length must be positive and finite");
  }
  if (!std::isfinite(lower[0]) || !std::isfinite(lower[1])) {
    fail(ErrorCode::argument, "grid bounds must be finite");
  }
  if (dim == 1) lower_[1] = 0.0;
  spacing_ = side / cells;
  size_ = dim == 1 ? static_cast<std::size_t>(cells)
                   : static_cast<std::size_t>(cells) * static_cast<std::size_t>(cells);
  cell_volume_ = dim == 1 ? spacing_ : spacing_ * spacing_;
}

Point Grid::center(std::size_t flat) const noexcept {
  const auto idx = index(flat);
  Point p{lower_[0] + (idx[0] + 0.5) * spacing_, 0.0};
  if (dim_ == 2) p[1] = lower_[1] + (idx[1] + 0.5) * spacing_;
  return p;
}

Grid Grid::refined(int factor) const {
  if (factor < 1) fail(ErrorCode::argument, "refinement factor must be positive");
  return Grid(dim_, lower_, side_, cells_ * factor);
}

Grid Grid::with_cells(int cells) const { return Grid(dim_, lower_, side_, cells); }

double distance(const Point& a, const Point& b, int dim) noexcept {
  if (dim == 1) return std::abs(a[0] - b[0]);
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    fail(ErrorCode::argument, "grid function has " + std::to_string(values_.size()) +
                                  " values for a grid of " +
                                  std::to_string(grid_.size()) + " cells");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      fail(ErrorCode::argument, "non-finite value at cell " + std::to_string(k));
    }
  }
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.size(), value));
}

GridFunction GridFunction::sample(const Grid& grid,
                                  const std::function<double(const Point&)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(grid.center(k));
  return GridFunction(grid, std::move(v));
}

double GridFunction::min() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::max() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

double GridFunction::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::abs() const {
  return map([](double v) { return std::abs(v); });
}

GridFunction GridFunction::scaled(double c) const {
  return map([c](double v) { return c * v; });
}

GridFunction GridFunction::shifted(double c) const {
  return map([c](double v) { return v + c; });
}

GridFunction GridFunction::map(const std::function<double(double)>& fn) const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), fn);
  return GridFunction(grid_, std::move(v));
}

namespace {

template <class Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
  if (!(a.grid() == b.grid())) fail(ErrorCode::argument, "grid functions live on different grids");
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(a[k], b[k]);
  return GridFunction(a.grid(), std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}

double cube_measure(const Grid& grid, int width) noexcept {
  const double side = width * grid.spacing();
  return grid.dim() == 1 ? side : side * side;
}

Cube Cube::make(const Grid& grid, std::array<int, 2> start, int width) {
  if (grid.dim() == 1) start[1] = 0;
  Cube q{start, width, 0.0};
  check_cube(grid, q);
  q.measure = cube_measure(grid, width);
  return q;
}

Cube Cube::whole(const Grid& grid) { return make(grid, {0, 0}, grid.cells_per_axis()); }

bool Cube::contains(const Grid& grid, std::size_t flat) const noexcept {
  const auto idx = grid.index(flat);
  for (int axis = 0; axis < grid.dim(); ++axis) {
    if (idx[axis] < start[axis] || idx[axis] >= start[axis] + width) return false;
  }
  return true;
}

bool Cube::contains(const Cube& inner, int dim) const noexcept {
  for (int axis = 0; axis < dim; ++axis) {
    if (inner.start[axis] < start[axis] ||
        inner.start[axis] + inner.width > start[axis] + width) {
      return false;
    }
  }
  return true;
}

Point Cube::center(const Grid& grid) const noexcept {
  const double half = 0.5 * width * grid.spacing();
  Point c{grid.lower(0) + start[0] * grid.spacing() + half, 0.0};
  if (grid.dim() == 2) c[1] = grid.lower(1) + start[1] * grid.spacing() + half;
  return c;
}

WidthSchedule full_schedule(int cells) {
  WidthSchedule w(static_cast<std::size_t>(cells));
  for (int k = 0; k < cells; ++k) w[static_cast<std::size_t>(k)] = k + 1;
  return w;
}

WidthSchedule geometric_schedule(int cells) {
  WidthSchedule w;
  for (int k = 1; k < cells; k *= 2) w.push_back(k);
  w.push_back(cells);
  return w;
}

WidthSchedule normalize_schedule(WidthSchedule widths, int max_width) {
  if (widths.empty()) fail(ErrorCode::argument, "width schedule is empty");
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
  if (widths.front() < 1 || widths.back() > max_width) {
    fail(ErrorCode::argument, "width schedule entries must lie in [1, " +
                                  std::to_string(max_width) + "]");
  }
  return widths;
}

PrefixTable::PrefixTable(const Grid& grid, std::span<const double> values)
    : dim_(grid.dim()), cells_(grid.cells_per_axis()), cell_values_(values.begin(), values.end()) {
  const bool compensated = cells_ >= kCompensatedPrefixCells;
  const std::size_t n = static_cast<std::size_t>(cells_);
  if (dim_ == 1) {
    table_.assign(n + 1, 0.0);
    CompensatedSum acc;
    double plain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (compensated) {
        acc.add(values[i]);
        table_[i + 1] = acc.value();
      } else {
        plain += values[i];
        table_[i + 1] = plain;
      }
    }
    return;
  }
  const std::size_t stride = n + 1;
  table_.assign(stride * stride, 0.0);
  // Row prefixes first, then accumulate them down the columns.
  for (std::size_t j = 0; j < n; ++j) {
    CompensatedSum acc;
    double plain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = values[j * n + i];
      if (compensated) {
        acc.add(v);
        table_[(j + 1) * stride + i + 1] = acc.value();
      } else {
        plain += v;
        table_[(j + 1) * stride + i + 1] = plain;
      }
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    CompensatedSum acc;
    double plain = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double v = table_[j * stride + i];
      if (compensated) {
        acc.add(v);
        table_[j * stride + i] = acc.value();
      } else {
        plain += v;
        table_[j * stride + i] = plain;
      }
    }
  }
}

double PrefixTable::box_sum(std::array<int, 2> start, int width) const noexcept {
  // Single cells come back exactly, not as a difference of running sums.
  if (width == 1) {
    return cell_values_[static_cast<std::size_t>(start[1]) * static_cast<std::size_t>(cells_) +
                        static_cast<std::size_t>(start[0])];
  }
  if (dim_ == 1) {
    return table_[static_cast<std::size_t>(start[0] + width)] -
           table_[static_cast<std::size_t>(start[0])];
  }
  const std::size_t stride = static_cast<std::size_t>(cells_) + 1;
  const std::size_t x0 = static_cast<std::size_t>(start[0]);
  const std::size_t y0 = static_cast<std::size_t>(start[1]);
  const std::size_t x1 = x0 + static_cast<std::size_t>(width);
  const std::size_t y1 = y0 + static_cast<std::size_t>(width);
  return (table_[y1 * stride + x1] - table_[y0 * stride + x1]) -
         (table_[y1 * stride + x0] - table_[y0 * stride + x0]);
}

double integrate(const GridFunction& f) {
  CompensatedSum acc;
  for (double v : f.values()) acc.add(v);
  return acc.value() * f.grid().cell_volume();
}

CubeAverager::CubeAverager(const GridFunction& f)
    : grid_(f.grid()), table_(f.grid(), f.values()) {}

double CubeAverager::average(const Cube& q) const {
  check_cube(grid_, q);
  const double count = grid_.dim() == 1 ? q.width : static_cast<double>(q.width) * q.width;
  return table_.box_sum(q) / count;
}

double CubeAverager::integral(const Cube& q) const {
  check_cube(grid_, q);
  return table_.box_sum(q) * grid_.cell_volume();
}

double cube_average(const GridFunction& f, const Cube& q) {
  return CubeAverager(f).average(q);
}

GridFunction indicator(const Grid& grid, const Cube& q) {
  check_cube(grid, q);
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (q.contains(grid, k)) v[k] = 1.0;
  }
  return GridFunction(grid, std::move(v));
}

std::vector<Cube> enumerate_cubes(const Grid& grid, const WidthSchedule& widths) {
  const int n = grid.cells_per_axis();
  const WidthSchedule ws = normalize_schedule(widths, n);
  std::vector<Cube> out;
  for (int w : ws) {
    const int starts = n - w + 1;
    const double measure = cube_measure(grid, w);
    const int rows = grid.dim() == 1 ? 1 : starts;
    for (int sy = 0; sy < rows; ++sy) {
      for (int sx = 0; sx < starts; ++sx) out.push_back(Cube{{sx, sy}, w, measure});
    }
  }
  return out;
}

std::vector<Cube> cubes_containing(const Grid& grid, std::size_t cell,
                                   const WidthSchedule& widths) {
  if (cell >= grid.size()) {
    fail(ErrorCode::argument, "cell index " + std::to_string(cell) + " is outside the grid");
  }
  const int n = grid.cells_per_axis();
  const WidthSchedule ws = normalize_schedule(widths, n);
  const auto idx = grid.index(cell);
  std::vector<Cube> out;
  for (int w : ws) {
    const double measure = cube_measure(grid, w);
    const int lo_x = std::max(0, idx[0] - w + 1);
    const int hi_x = std::min(idx[0], n - w);
    const int lo_y = grid.dim() == 1 ? 0 : std::max(0, idx[1] - w + 1);
    const int hi_y = grid.dim() == 1 ? 0 : std::min(idx[1], n - w);
    for (int sy = lo_y; sy <= hi_y; ++sy) {
      for (int sx = lo_x; sx <= hi_x; ++sx) out.push_back(Cube{{sx, sy}, w, measure});
    }
  }
  return out;
}

}  // namespace varlip
