#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"
#include "varlip/norms.hpp"
#include "varlip/pairs.hpp"

namespace varlip {

struct PointwiseLipschitz {
  double norm = 0.0;
  std::array<std::size_t, 2> witness{0, 0};  // ordered (x, y): delta taken at x
  bool approximate = false;
};

// max over ordered pairs x != y of |b(x) - b(y)| / |x - y|^{delta(x)}. Pairs
// are subsampled above 2048 cells in 1D and 16384 cells in 2D unless the
// sampling mode says otherwise.
PointwiseLipschitz pointwise_lipschitz_norm(const GridFunction& b, const GridFunction& delta,
                                            const PairSampling& sampling = {});

struct IntegralLipschitz {
  double norm = 0.0;
  Cube witness;
  bool approximate = false;
};

// Precomputes |Q|^{1/beta} ||chi_Q||_{p'} for every scheduled cube so that
// many symbols can be evaluated against the same system.
class IntegralLipschitzEvaluator {
 public:
  IntegralLipschitzEvaluator(double beta, const VariableExponent& p,
                             std::optional<WidthSchedule> widths = {},
                             const NormTolerances& tol = {});
  IntegralLipschitz operator()(const GridFunction& b) const;
  const std::vector<Cube>& cubes() const noexcept { return cubes_; }

 private:
  Grid grid_;
  std::vector<Cube> cubes_;
  std::vector<double> scale_;
  bool approximate_ = false;
};

// max over scheduled cubes of |Q|^{-1/beta} ||chi_Q||_{p'}^{-1} integral_Q |b - b_Q|.
IntegralLipschitz integral_lipschitz_norm(const GridFunction& b, const ExponentSystem& sys,
                                          std::optional<WidthSchedule> widths = {},
                                          const NormTolerances& tol = {});
// Same functional from raw (beta, p); beta = p constant is allowed here.
IntegralLipschitz integral_lipschitz_norm(const GridFunction& b, double beta,
                                          const VariableExponent& p,
                                          std::optional<WidthSchedule> widths = {},
                                          const NormTolerances& tol = {});

// |x - y|^{d} <= factor * |Q|^{d/n} for cell centres x, y of a cube Q:
// 1 in 1D, n^{d/2} in higher dimension.
double diameter_factor(int dim, double d) noexcept;

struct OscillationBound {
  double worst_ratio = 0.0;  // max |b(x) - b_Q| / (factor * norm * |Q|^{delta(x)/n})
  double worst_excess = 0.0; // max |b(x) - b_Q| - factor * norm * |Q|^{delta(x)/n}
  std::size_t worst_cell = 0;
  bool passed = true;
};

// Checks |b(x) - b_Q| <= factor * norm * |Q|^{delta(x)/n} at every cell of Q.
OscillationBound oscillation_bound_check(const GridFunction& b, const GridFunction& delta,
                                         const Cube& q, double norm, double slack = 1e-9);

}  // namespace varlip
