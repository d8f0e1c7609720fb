#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "varlip/grid.hpp"
#include "varlip/pairs.hpp"

namespace varlip {

// Exponent function with 1 < p_minus <= p(x) <= p_plus < inf at every cell.
// p_infty is the declared limit at infinity; the grid is bounded, so it is
// carried along rather than inferred.
class VariableExponent {
 public:
  VariableExponent(GridFunction values, std::optional<double> p_infty);

  static VariableExponent constant(const Grid& grid, double p);

  const Grid& grid() const noexcept { return values_.grid(); }
  const GridFunction& values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }

  double p_minus() const noexcept { return p_minus_; }
  double p_plus() const noexcept { return p_plus_; }
  std::optional<double> p_infty() const noexcept { return p_infty_; }

  bool is_constant() const noexcept { return p_minus_ == p_plus_; }

  // s * p(.), used by the power rule.
  VariableExponent scaled(double s) const;

 private:
  GridFunction values_;
  double p_minus_;
  double p_plus_;
  std::optional<double> p_infty_;
};

struct LogHolderEstimate {
  double c_log = 0.0;
  double c_infty = 0.0;  // NaN when p_infty is undeclared
  std::array<std::size_t, 2> worst_pair{0, 0};
  std::size_t worst_decay_cell = 0;
  bool approximate = false;
};

VariableExponent conjugate(const VariableExponent& p);

// delta(x) = n (1/beta - 1/p(x)); requires 1 < beta < p_minus.
GridFunction derive_delta(const VariableExponent& p, double beta, int n);

// q(x) = (1/r(x) - alpha/n - delta(x)/n)^{-1}; every sample must give q > 1.
VariableExponent derive_q(const VariableExponent& r, const GridFunction& delta, double alpha,
                          int n, std::optional<double> q_infty = std::nullopt);

LogHolderEstimate log_holder_constants(const VariableExponent& p,
                                       const PairSampling& sampling = {});

using ParamMap = std::map<std::string, double, std::less<>>;

// Families: constant{p0}, log_decay{p_infty, c}, smooth_bump{p_infty, a, s}.
VariableExponent builtin_exponent(const Grid& grid, std::string_view family,
                                  const ParamMap& params);

// The coupled exponents of the commutator theorems:
//   delta/n = 1/beta - 1/p = 1/r - alpha/n - 1/q.
class ExponentSystem {
 public:
  static ExponentSystem make(const VariableExponent& p, double beta, double alpha,
                             const VariableExponent& r);

  int dim() const noexcept { return p_.grid().dim(); }
  const Grid& grid() const noexcept { return p_.grid(); }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const VariableExponent& p() const noexcept { return p_; }
  const VariableExponent& r() const noexcept { return r_; }
  const VariableExponent& q() const noexcept { return q_; }
  const VariableExponent& p_conj() const noexcept { return p_conj_; }
  const VariableExponent& q_conj() const noexcept { return q_conj_; }
  const GridFunction& delta() const noexcept { return delta_; }

  // Largest residual of the two defining relations over all samples.
  double relation_residual() const;

 private:
  ExponentSystem(double alpha, double beta, VariableExponent p, VariableExponent r,
                 VariableExponent q, GridFunction delta);

  double alpha_;
  double beta_;
  VariableExponent p_;
  VariableExponent r_;
  VariableExponent q_;
  VariableExponent p_conj_;
  VariableExponent q_conj_;
  GridFunction delta_;
};

}  // namespace varlip
