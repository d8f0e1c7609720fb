#pragma once

#include <optional>

#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"
#include "varlip/norms.hpp"

// Naive per-point and per-pair evaluations. Quadratic or worse; they touch
// every cell of every cube directly and share no kernels with the fast paths.
namespace varlip::reference {

// Cubes are taken from cubes_containing with the given widths (all widths
// when unset). `restrict_to` keeps only cubes inside that cube and zeroes
// cells outside it.
struct Scope {
  std::optional<WidthSchedule> widths;
  std::optional<Cube> restrict_to;
};

GridFunction fractional_maximal(const GridFunction& f, const GridFunction& order,
                                const Scope& scope = {});
GridFunction sharp_maximal(const GridFunction& f, const Scope& scope = {});
GridFunction maximal_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                                const Scope& scope = {});

// Ordered pairs, delta at the first point; every pair, no sampling.
double pointwise_lipschitz_norm(const GridFunction& b, const GridFunction& delta);
// ||chi_Q||_{p'} from the general Luxemburg norm of the indicator.
double integral_lipschitz_norm(const GridFunction& b, double beta, const VariableExponent& p,
                               const Scope& scope = {}, const NormTolerances& tol = {});
// sup over cubes of |Q|^{-1} integral_Q |b - b_Q|.
double bmo_norm(const GridFunction& b, const Scope& scope = {});

// Potential by direct summation: 1D integrates the kernel over each cell from
// its antiderivative; 2D uses cell centres and drops the diagonal.
GridFunction potential(const GridFunction& f, const GridFunction& delta);

}  // namespace varlip::reference
