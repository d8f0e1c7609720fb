#include "varlip/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "varlip/error.hpp"

namespace varlip {

namespace {

constexpr double kSampleSlack = 1e-12;
// Exhaustive pair scans stop here in 1D (cells) and 2D (total cells).
constexpr int kLogHolderSubsample1D = 4096;
constexpr std::size_t kLogHolderSubsample2D = 16384;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

double param(const ParamMap& params, std::string_view family, std::string_view name) {
  const auto it = params.find(name);
  if (it == params.end()) {
    fail(ErrorCode::argument,
         std::string(family) + " exponent needs parameter '" + std::string(name) + "'");
  }
  return it->second;
}

void reject_unknown(const ParamMap& params, std::string_view family,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : params) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(ErrorCode::argument,
           "unknown parameter '" + key + "' for " + std::string(family) + " exponent");
    }
  }
}

double radius(const Point& x, int dim) { return distance(x, Point{0.0, 0.0}, dim); }

}  // namespace

VariableExponent::VariableExponent(GridFunction values, std::optional<double> p_infty)
    : values_(std::move(values)), p_infty_(p_infty) {
  p_minus_ = values_.min();
  p_plus_ = values_.max();
  if (!(p_minus_ > 1.0)) {
    fail(ErrorCode::exponent_range, "exponent minimum " + fmt(p_minus_) + " is not above 1");
  }
  if (p_infty_ && !(std::isfinite(*p_infty_) && *p_infty_ > 1.0)) {
    fail(ErrorCode::exponent_range, "declared p_infty " + fmt(*p_infty_) + " is not in (1, inf)");
  }
}

VariableExponent VariableExponent::constant(const Grid& grid, double p) {
  return VariableExponent(GridFunction::constant(grid, p), p);
}

VariableExponent VariableExponent::scaled(double s) const {
  std::optional<double> inf;
  if (p_infty_ && s * *p_infty_ > 1.0) inf = s * *p_infty_;
  return VariableExponent(values_.scaled(s), inf);
}

VariableExponent conjugate(const VariableExponent& p) {
  const auto conj = [](double v) { return v / (v - 1.0); };
  std::optional<double> inf;
  if (p.p_infty()) inf = conj(*p.p_infty());
  return VariableExponent(p.values().map(conj), inf);
}

GridFunction derive_delta(const VariableExponent& p, double beta, int n) {
  if (!(beta > 1.0 && beta < p.p_minus())) {
    fail(ErrorCode::argument, "beta = " + fmt(beta) +
                                  " violates the hypothesis 1 < beta < p_minus = " +
                                  fmt(p.p_minus()));
  }
  return p.values().map([beta, n](double v) { return n * (1.0 / beta - 1.0 / v); });
}

VariableExponent derive_q(const VariableExponent& r, const GridFunction& delta, double alpha,
                          int n, std::optional<double> q_infty) {
  if (!(r.grid() == delta.grid())) {
    fail(ErrorCode::argument, "r and delta live on different grids");
  }
  std::vector<double> q(r.size());
  std::size_t worst = 0;
  double worst_excess = -1.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double inv = 1.0 / r[k] - alpha / n - delta[k] / n;
    // Distance outside (0, 1); positive means the sample is invalid.
    const double excess = std::max(-inv, inv - 1.0);
    if (excess >= 0.0 && excess > worst_excess) {
      worst_excess = excess;
      worst = k;
    }
    q[k] = 1.0 / inv;
  }
  if (worst_excess >= 0.0) {
    const double inv = 1.0 / r[worst] - alpha / n - delta[worst] / n;
    fail(ErrorCode::exponent_range,
         "1/q = 1/r - alpha/n - delta/n = " + fmt(inv) + " at cell " + std::to_string(worst) +
             " is outside (0, 1); q is not a valid exponent");
  }
  if (q_infty && !(std::isfinite(*q_infty) && *q_infty > 1.0)) q_infty.reset();
  return VariableExponent(GridFunction(r.grid(), std::move(q)), q_infty);
}

LogHolderEstimate log_holder_constants(const VariableExponent& p, const PairSampling& sampling) {
  const Grid& grid = p.grid();
  LogHolderEstimate est;
  const bool large = grid.dim() == 1 ? grid.cells_per_axis() >= kLogHolderSubsample1D
                                     : grid.size() > kLogHolderSubsample2D;
  std::vector<Point> centers(grid.size());
  for (std::size_t k = 0; k < centers.size(); ++k) centers[k] = grid.center(k);

  est.approximate = for_each_pair(grid, sampling, large, [&](std::size_t a, std::size_t b) {
    const double d = distance(centers[a], centers[b], grid.dim());
    const double v = std::abs(p[a] - p[b]) * std::log(std::numbers::e + 1.0 / d);
    if (v > est.c_log) {
      est.c_log = v;
      est.worst_pair = {a, b};
    }
  });

  if (!p.p_infty()) {
    est.c_infty = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  const double p_inf = *p.p_infty();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v =
        std::abs(p[k] - p_inf) * std::log(std::numbers::e + radius(centers[k], grid.dim()));
    if (v > est.c_infty) {
      est.c_infty = v;
      est.worst_decay_cell = k;
    }
  }
  return est;
}

VariableExponent builtin_exponent(const Grid& grid, std::string_view family,
                                  const ParamMap& params) {
  const int dim = grid.dim();
  if (family == "constant") {
    reject_unknown(params, family, {"p0", "p_infty"});
    const double p0 = param(params, family, "p0");
    if (!(p0 > 1.0 && std::isfinite(p0))) fail(ErrorCode::argument, "constant exponent needs p0 > 1");
    const auto it = params.find("p_infty");
    const double inf = it == params.end() ? p0 : it->second;
    return VariableExponent(GridFunction::constant(grid, p0), inf);
  }
  if (family == "log_decay") {
    reject_unknown(params, family, {"p_infty", "c"});
    const double inf = param(params, family, "p_infty");
    const double c = param(params, family, "c");
    if (!(inf > 1.0 && std::isfinite(inf))) fail(ErrorCode::argument, "log_decay needs p_infty > 1");
    if (!(c >= 0.0 && std::isfinite(c))) fail(ErrorCode::argument, "log_decay needs c >= 0");
    auto values = GridFunction::sample(grid, [&](const Point& x) {
      return inf + c / std::log(std::numbers::e + radius(x, dim));
    });
    return VariableExponent(std::move(values), inf);
  }
  if (family == "smooth_bump") {
    reject_unknown(params, family, {"p_infty", "a", "s"});
    const double inf = param(params, family, "p_infty");
    const double a = param(params, family, "a");
    const double s = param(params, family, "s");
    if (!(inf > 1.0 && std::isfinite(inf))) fail(ErrorCode::argument, "smooth_bump needs p_infty > 1");
    if (!(a >= 0.0 && std::isfinite(a))) fail(ErrorCode::argument, "smooth_bump needs a >= 0");
    if (!(s > 0.0 && std::isfinite(s))) fail(ErrorCode::argument, "smooth_bump needs s > 0");
    auto values = GridFunction::sample(grid, [&](const Point& x) {
      const double r = radius(x, dim);
      return inf + a * std::exp(-(r * r) / (s * s));
    });
    return VariableExponent(std::move(values), inf);
  }
  fail(ErrorCode::argument, "unknown exponent family '" + std::string(family) +
                                "' (expected constant, log_decay or smooth_bump)");
}

ExponentSystem::ExponentSystem(double alpha, double beta, VariableExponent p,
                               VariableExponent r, VariableExponent q, GridFunction delta)
    : alpha_(alpha),
      beta_(beta),
      p_(std::move(p)),
      r_(std::move(r)),
      q_(std::move(q)),
      p_conj_(conjugate(p_)),
      q_conj_(conjugate(q_)),
      delta_(std::move(delta)) {}

ExponentSystem ExponentSystem::make(const VariableExponent& p, double beta, double alpha,
                                    const VariableExponent& r) {
  const int n = p.grid().dim();
  if (!(p.grid() == r.grid())) fail(ErrorCode::argument, "p and r live on different grids");
  if (!(alpha >= 0.0 && alpha < n)) {
    fail(ErrorCode::argument, "alpha = " + fmt(alpha) + " is outside [0, " +
                                  std::to_string(n) + ")");
  }
  GridFunction delta = derive_delta(p, beta, n);
  if (p.p_infty()) {
    const double inf = *p.p_infty();
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] < inf - kSampleSlack) {
        fail(ErrorCode::hypothesis, "hypothesis p(x) >= p_infty fails at cell " +
                                        std::to_string(k) + ": p = " + fmt(p[k]) +
                                        " < p_infty = " + fmt(inf));
      }
    }
  }
  std::optional<double> q_inf;
  if (p.p_infty() && r.p_infty()) {
    const double delta_inf = n * (1.0 / beta - 1.0 / *p.p_infty());
    q_inf = 1.0 / (1.0 / *r.p_infty() - alpha / n - delta_inf / n);
  }
  VariableExponent q = derive_q(r, delta, alpha, n, q_inf);
  return ExponentSystem(alpha, beta, p, r, std::move(q), std::move(delta));
}

double ExponentSystem::relation_residual() const {
  const int n = dim();
  double worst = 0.0;
  for (std::size_t k = 0; k < p_.size(); ++k) {
    const double d = delta_[k] / n;
    worst = std::max(worst, std::abs(d - (1.0 / beta_ - 1.0 / p_[k])));
    worst = std::max(worst, std::abs(1.0 / q_[k] - (1.0 / r_[k] - alpha_ / n - d)));
  }
  return worst;
}

}  // namespace varlip
