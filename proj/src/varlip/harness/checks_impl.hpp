#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "varlip/harness/checks.hpp"
#include "varlip/operators.hpp"

namespace varlip::harness::detail {

inline double ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

Json cell_witness(const Grid& grid, std::size_t cell);
Json cube_witness(const Grid& grid, const Cube& q);
Json pair_witness(const Grid& grid, std::size_t x, std::size_t y);
Json values_json(std::span<const double> v);

WidthSchedule active_widths(Context& ctx, const Grid& grid);
// Random cubes inside the middle third of every axis, widths from `widths`.
std::vector<Cube> middle_third_cubes(const Grid& grid, Rng& rng, int count,
                                     const WidthSchedule& widths);
// Random cubes anywhere in the grid, widths from `widths`.
std::vector<Cube> random_cubes(const Grid& grid, Rng& rng, int count, const WidthSchedule& widths);
std::vector<std::size_t> cube_cells(const Grid& grid, const Cube& q);
GridFunction random_piecewise_constant(const Grid& grid, Rng& rng);
VariableExponent random_log_decay(const Grid& grid, Rng& rng, double p_lo, double p_hi);

// norms and exponents
void norm_constant_exponent(Context&, CheckReport&);
void norm_homogeneity(Context&, CheckReport&);
void norm_power_rule(Context&, CheckReport&);
void norm_unit_modular(Context&, CheckReport&);
void norm_product_rule(Context&, CheckReport&);
void holder_variable(Context&, CheckReport&);
void holder_constant(Context&, CheckReport&);
void exponent_conjugacy(Context&, CheckReport&);
void exponent_system_closure(Context&, CheckReport&);
void exponent_decay_hypothesis(Context&, CheckReport&);
void log_holder_family(Context&, CheckReport&);

// operators
void indicator_fractional_maximal(Context&, CheckReport&);
void indicator_sharp_maximal(Context&, CheckReport&);
void domination_potential(Context&, CheckReport&);
void potential_ratio(Context&, CheckReport&);
void oracle_operators(Context&, CheckReport&);
void oracle_lipschitz(Context&, CheckReport&);
void nonsublinearity_witness(Context&, CheckReport&);

// converse machinery
void converse_mean_bound(Context&, CheckReport&);
void converse_mean_split(Context&, CheckReport&);
void converse_split_inequality(Context&, CheckReport&);
void converse_fractional_split_inequality(Context&, CheckReport&);
void commutator_indicator_identity(Context&, CheckReport&);
void negative_part_probe(Context&, CheckReport&);

// lemmas and Lipschitz spaces
void lemma_indicator_duality(Context&, CheckReport&);
void lemma_indicator_duality_constant(Context&, CheckReport&);
void lemma_indicator_fractional_duality(Context&, CheckReport&);
void lemma_indicator_fractional_duality_constant(Context&, CheckReport&);
void lemma_small_cube_norm(Context&, CheckReport&);
void lipschitz_equivalence(Context&, CheckReport&);
void lipschitz_bmo_reduction(Context&, CheckReport&);
void oscillation_bound(Context&, CheckReport&);
void oscillation_sampling_regression(Context&, CheckReport&);
void blowup_step(Context&, CheckReport&);
void blowup_smooth(Context&, CheckReport&);

// commutator theorems
void domination_maximal_commutator(Context&, CheckReport&);
void domination_nonlinear_fractional(Context&, CheckReport&);
void domination_sharp_commutator(Context&, CheckReport&);
void forward_sharp_commutator(Context&, CheckReport&);
void forward_maximal_commutator(Context&, CheckReport&);
void forward_fractional_commutator(Context&, CheckReport&);
void ratio_stability_maximal_commutator(Context&, CheckReport&);
void ratio_stability_fractional_commutator(Context&, CheckReport&);
void ratio_stability_sharp_commutator(Context&, CheckReport&);

void suite_self_audit(Context&, CheckReport&);

}  // namespace varlip::harness::detail
