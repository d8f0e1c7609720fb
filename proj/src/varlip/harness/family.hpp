#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"

namespace varlip::harness {

// Portable uniform draws on top of mt19937_64 (whose output sequence is fixed
// by the standard, unlike the distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct TestFamily {
  std::uint64_t seed = 0;
  std::vector<GridFunction> members;
  std::vector<std::string> labels;
};

// Members are defined in coordinates relative to the box, so the same seed
// gives the same functions on any grid over it: indicators of cubes,
// Gaussian bumps, piecewise constants on an 8^n partition, power bumps.
TestFamily make_test_family(const Grid& grid, std::uint64_t seed, int count = 20);

struct Symbol {
  std::string label;
  GridFunction values;
};

// Nonnegative, non-constant symbols: linear, |x - x0|^d, Gaussian, random
// smooth (low-pass noise) and step, cycling.
std::vector<Symbol> symbol_corpus(const Grid& grid, std::uint64_t seed, int count = 20);

// Families: constant{c}, linear{slope}, power{x0, y0, delta0, scale},
// gaussian{x0, y0, width, amplitude}, step{x0, height}. Physical coordinates.
GridFunction builtin_symbol(const Grid& grid, std::string_view family, const ParamMap& params);

// Random function for norm experiments: signed values over six decades with
// some zero cells.
GridFunction random_function(const Grid& grid, Rng& rng);

}  // namespace varlip::harness
