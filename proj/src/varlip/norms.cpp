#include "varlip/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "varlip/error.hpp"
#include "varlip/summation.hpp"

namespace varlip {

namespace {

constexpr double kOverflowRatio = 1e30;

// Nonzero samples in log form: term k contributes exp(p_k (log_abs_k - log mu)).
struct LogTerms {
  std::vector<double> log_abs;
  std::vector<double> exponent;
  double cell_volume = 0.0;
  double p_lo = 0.0;
  double p_hi = 0.0;

  double rho(double log_mu) const {
    CompensatedSum acc;
    for (std::size_t k = 0; k < log_abs.size(); ++k) {
      acc.add(std::exp(exponent[k] * (log_abs[k] - log_mu)));
    }
    return acc.value() * cell_volume;
  }
};

// Solves rho(f / (scale * mu)) = 1 for mu; terms are already divided by scale.
NormResult bisect(const LogTerms& terms, double scale, const NormTolerances& tol) {
  const auto g = [&](double mu) { return terms.rho(std::log(mu)); };
  const double r = terms.rho(0.0);
  double lo = std::min(std::pow(r, 1.0 / terms.p_lo), std::pow(r, 1.0 / terms.p_hi));
  double hi = std::max(std::pow(r, 1.0 / terms.p_lo), std::pow(r, 1.0 / terms.p_hi));

  NormResult out;
  if (lo == hi) {
    const double m = g(lo);
    if (std::abs(m - 1.0) <= tol.modular) {
      out.value = scale * lo;
      out.modular_at_value = m;
      return out;
    }
  }
  // Rounding can leave the analytic bracket a few ulps short; widen until it
  // straddles the root.
  while (g(lo) < 1.0) lo *= 1.0 - 1e-9;
  while (g(hi) > 1.0) hi *= 1.0 + 1e-9;

  double mid = 0.5 * (lo + hi);
  double m = g(mid);
  int it = 1;
  while (std::abs(m - 1.0) > tol.modular && (hi - lo) > tol.bracket * hi &&
         it < tol.max_iterations) {
    if (m > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    m = g(mid);
    ++it;
  }
  out.value = scale * mid;
  out.modular_at_value = m;
  out.iterations = it;
  out.bracket_width = scale * (hi - lo);
  return out;
}

}  // namespace

double modular(const GridFunction& f, const VariableExponent& p, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::argument, "modular needs a positive finite lambda");
  }
  if (!(f.grid() == p.grid())) fail(ErrorCode::argument, "function and exponent grids differ");
  CompensatedSum acc;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double t = std::abs(f[k]) / lambda;
    if (t > kOverflowRatio) return std::numeric_limits<double>::infinity();
    if (t != 0.0) acc.add(std::pow(t, p[k]));
  }
  return acc.value() * f.grid().cell_volume();
}

NormResult luxemburg_norm(const GridFunction& f, const VariableExponent& p,
                          const NormTolerances& tol) {
  if (!(f.grid() == p.grid())) fail(ErrorCode::argument, "function and exponent grids differ");
  const double scale = f.max_abs();
  if (scale == 0.0) return {};
  LogTerms terms;
  terms.cell_volume = f.grid().cell_volume();
  terms.p_lo = p.p_minus();
  terms.p_hi = p.p_plus();
  const double log_scale = std::log(scale);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0.0) continue;
    terms.log_abs.push_back(std::log(std::abs(f[k])) - log_scale);
    terms.exponent.push_back(p[k]);
  }
  return bisect(terms, scale, tol);
}

NormResult indicator_norm(const Cube& q, const VariableExponent& p, const NormTolerances& tol) {
  const Grid& grid = p.grid();
  LogTerms terms;
  terms.cell_volume = grid.cell_volume();
  terms.p_lo = std::numeric_limits<double>::infinity();
  terms.p_hi = 0.0;
  const int rows = grid.dim() == 1 ? 1 : q.width;
  for (int dy = 0; dy < rows; ++dy) {
    for (int dx = 0; dx < q.width; ++dx) {
      const int y = grid.dim() == 1 ? 0 : q.start[1] + dy;
      const int x = q.start[0] + dx;
      if (x < 0 || x >= grid.cells_per_axis() || y < 0 || y >= grid.cells_per_axis()) {
        fail(ErrorCode::domain, "cube lies outside the exponent's grid");
      }
      const double e = p[grid.flat(x, y)];
      terms.log_abs.push_back(0.0);
      terms.exponent.push_back(e);
      terms.p_lo = std::min(terms.p_lo, e);
      terms.p_hi = std::max(terms.p_hi, e);
    }
  }
  return bisect(terms, 1.0, tol);
}

HolderPairing holder_pairing(const GridFunction& f, const GridFunction& g,
                             const VariableExponent& p) {
  HolderPairing out;
  out.lhs = integrate((f * g).abs());
  out.rhs = luxemburg_norm(f, p).value * luxemburg_norm(g, conjugate(p)).value;
  return out;
}

double holder_constant(const VariableExponent& p) noexcept {
  return 1.0 / p.p_minus() + 1.0 - 1.0 / p.p_plus();
}

}  // namespace varlip
