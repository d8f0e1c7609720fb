#pragma once

#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"

namespace varlip {

struct NormTolerances {
  double modular = 1e-10;  // stop when |rho(f/lambda) - 1| <= modular
  double bracket = 1e-12;  // or when the bracket is this narrow, relative
  int max_iterations = 400;
};

struct NormResult {
  double value = 0.0;
  double modular_at_value = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
};

// rho_p(f / lambda) = sum (|f|/lambda)^p(x) h^dim. Samples with
// |f|/lambda > 1e30 make the modular +inf.
double modular(const GridFunction& f, const VariableExponent& p, double lambda);

// Luxemburg norm: the unique lambda with rho_p(f/lambda) = 1, by bisection.
NormResult luxemburg_norm(const GridFunction& f, const VariableExponent& p,
                          const NormTolerances& tol = {});

// Norm of the indicator of q; touches only the cells of q.
NormResult indicator_norm(const Cube& q, const VariableExponent& p,
                          const NormTolerances& tol = {});

struct HolderPairing {
  double lhs = 0.0;  // integral of |f g|
  double rhs = 0.0;  // ||f||_p ||g||_p'
};

HolderPairing holder_pairing(const GridFunction& f, const GridFunction& g,
                             const VariableExponent& p);

// Constant of the variable Holder inequality, 1/p_- + 1/(p')_-. Equals 1 for
// constant exponents and never exceeds 2.
double holder_constant(const VariableExponent& p) noexcept;

}  // namespace varlip
