#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"
#include "varlip/harness/context.hpp"
#include "varlip/harness/report.hpp"
#include "varlip/norms.hpp"

namespace varlip::harness {

struct CheckSpec {
  std::string_view id;
  std::string_view location;
  void (*run)(Context&, CheckReport&);
};

// Every registered check in run order; suite_self_audit is last.
const std::vector<CheckSpec>& check_registry();
std::vector<std::string> check_ids();

using Operator = std::function<GridFunction(const GridFunction&)>;

struct RatioEstimate {
  double ratio = 0.0;  // a lower bound for the operator norm
  std::size_t member = 0;
  std::vector<double> per_member;
};

// max over members of ||T f||_q / ||f||_r.
RatioEstimate operator_norm_estimate(const Operator& op, const VariableExponent& r,
                                     const VariableExponent& q,
                                     const std::vector<GridFunction>& family,
                                     const NormTolerances& tol = {});

enum class Theorem { sharp_commutator, maximal_commutator, fractional_commutator };

// Throws Error(hypothesis) naming the first clause the system or symbol
// violates. The sharp-commutator theorem needs alpha = 0.
void validate_hypotheses(Theorem which, const ExponentSystem& sys, const GridFunction& b);

struct BlowupResult {
  std::vector<int> widths;      // nested dyadic cubes, smallest first
  std::vector<double> measures;
  std::vector<double> ratios;   // |Q|^{-1/beta} ||chi_Q||_{p'}^{-1} integral_Q |b - b_Q|
  std::size_t fitted = 0;       // points in the fit
  double slope = 0.0;
  double predicted = 0.0;       // -delta(x0)/n
  bool degenerate = false;      // every ratio is zero
  std::array<int, 2> vertex{0, 0};
};

// Nested cubes of width 2, 4, 8, ... centred on the grid vertex nearest x0;
// least-squares slope of log R against log |Q| without the two smallest.
// Throws Error(insufficient_data) when fewer than 4 cubes remain.
BlowupResult blowup_probe(const GridFunction& b, const ExponentSystem& sys, const Point& x0,
                          const NormTolerances& tol = {});

}  // namespace varlip::harness
