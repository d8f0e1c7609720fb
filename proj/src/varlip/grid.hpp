#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace varlip {

using Point = std::array<double, 2>;

// Uniform cell-centred discretisation of a square box in R^1 or R^2. Every
// axis has the same cell count and spacing; axis 1 is ignored when dim == 1.
class Grid {
 public:
  Grid(int dim, Point lower, double side, int cells);

  int dim() const noexcept { return dim_; }
  int cells_per_axis() const noexcept { return cells_; }
  double spacing() const noexcept { return spacing_; }
  double side() const noexcept { return side_; }
  double lower(int axis) const noexcept { return lower_[axis]; }
  double upper(int axis) const noexcept { return lower_[axis] + side_; }

  std::size_t size() const noexcept { return size_; }
  double cell_volume() const noexcept { return cell_volume_; }

  // Flat index is row-major with axis 0 fastest: flat = j * N + i.
  std::size_t flat(int i, int j = 0) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(cells_) +
           static_cast<std::size_t>(i);
  }
  std::array<int, 2> index(std::size_t flat) const noexcept {
    return {static_cast<int>(flat % static_cast<std::size_t>(cells_)),
            dim_ == 1 ? 0 : static_cast<int>(flat / static_cast<std::size_t>(cells_))};
  }
  Point center(std::size_t flat) const noexcept;

  // Same bounds and spacing, refined by `factor` cells per cell.
  Grid refined(int factor) const;
  // Same bounds, different cell count.
  Grid with_cells(int cells) const;

  bool operator==(const Grid& other) const noexcept = default;

 private:
  int dim_;
  Point lower_;
  double side_;
  int cells_;
  double spacing_;
  std::size_t size_;
  double cell_volume_;
};

double distance(const Point& a, const Point& b, int dim) noexcept;

// Real samples on a grid, one per cell. Values must be finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction constant(const Grid& grid, double value);
  static GridFunction sample(const Grid& grid,
                             const std::function<double(const Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  double min() const noexcept;
  double max() const noexcept;
  double max_abs() const noexcept;
  bool is_zero() const noexcept;

  GridFunction abs() const;
  GridFunction scaled(double c) const;
  GridFunction shifted(double c) const;
  GridFunction map(const std::function<double(double)>& fn) const;

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator*(const GridFunction& a, const GridFunction& b);

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Grid-aligned axis-parallel cube: `width` cells per side starting at
// `start`. Always lies inside the grid.
struct Cube {
  std::array<int, 2> start{0, 0};
  int width = 0;
  double measure = 0.0;

  static Cube make(const Grid& grid, std::array<int, 2> start, int width);
  // The whole grid as a cube.
  static Cube whole(const Grid& grid);

  bool contains(const Grid& grid, std::size_t flat) const noexcept;
  bool contains(const Cube& inner, int dim) const noexcept;
  Point center(const Grid& grid) const noexcept;

  bool operator==(const Cube& other) const noexcept {
    return start == other.start && width == other.width;
  }
};

double cube_measure(const Grid& grid, int width) noexcept;

using WidthSchedule = std::vector<int>;

WidthSchedule full_schedule(int cells);
WidthSchedule geometric_schedule(int cells);
// Sorted, deduplicated copy; throws if empty or any width is outside [1, max_width].
WidthSchedule normalize_schedule(WidthSchedule widths, int max_width);

// Summed-area table of cell values. Box queries are O(1).
class PrefixTable {
 public:
  PrefixTable(const Grid& grid, std::span<const double> values);

  // Sum of the raw values over the cube of `width` cells at `start`.
  double box_sum(std::array<int, 2> start, int width) const noexcept;
  double box_sum(const Cube& q) const noexcept { return box_sum(q.start, q.width); }

 private:
  int dim_;
  int cells_;
  std::vector<double> cell_values_;
  std::vector<double> table_;
};

double integrate(const GridFunction& f);

// Cube averages of a fixed function; builds the prefix table once.
class CubeAverager {
 public:
  explicit CubeAverager(const GridFunction& f);
  double average(const Cube& q) const;
  double integral(const Cube& q) const;

 private:
  Grid grid_;
  PrefixTable table_;
};

double cube_average(const GridFunction& f, const Cube& q);

GridFunction indicator(const Grid& grid, const Cube& q);

std::vector<Cube> enumerate_cubes(const Grid& grid, const WidthSchedule& widths);
std::vector<Cube> cubes_containing(const Grid& grid, std::size_t cell,
                                   const WidthSchedule& widths);

}  // namespace varlip
