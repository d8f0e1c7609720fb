#pragma once

#include "varlip/grid.hpp"
#include "varlip/operators.hpp"

namespace varlip {

enum class CommutatorKernel {
  direct,       // per-cell prefix table of |b(x) - b(y)| |f(y)|
  level_split,  // masked tables split by b(y) <= b(x); ties go to the lower side
};

// M_{alpha,b} f(x) = sup over cubes Q containing x of
// |Q|^{alpha/n - 1} * integral over Q of |b(x) - b(y)| |f(y)| dy.
GridFunction maximal_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                                const MaximalConfig& cfg = {},
                                CommutatorKernel kernel = CommutatorKernel::direct);

// b M_alpha(f) - M_alpha(b f). Keeps its sign.
GridFunction nonlinear_fractional_commutator(const GridFunction& b, const GridFunction& f,
                                             double alpha, const MaximalConfig& cfg = {});

// b M#(f) - M#(b f). Keeps its sign.
GridFunction nonlinear_sharp_commutator(const GridFunction& b, const GridFunction& f,
                                        const MaximalConfig& cfg = {});

struct AlphaZeroCommutators {
  GridFunction maximal;    // M_b f
  GridFunction nonlinear;  // [b, M] f
};

AlphaZeroCommutators specialize_alpha_zero(const GridFunction& b, const GridFunction& f,
                                           const MaximalConfig& cfg = {});

}  // namespace varlip
