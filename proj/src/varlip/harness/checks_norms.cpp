#include <cmath>
#include <limits>

#include "varlip/harness/checks_impl.hpp"
#include "varlip/norms.hpp"

namespace varlip::harness::detail {

namespace {

constexpr int kCases = 200;

double closed_form_norm(const GridFunction& f, double p) {
  const double m = f.max_abs();
  long double acc = 0.0L;
  for (double v : f.values()) {
    if (v != 0.0) acc += std::pow(static_cast<long double>(std::abs(v) / m), static_cast<long double>(p));
  }
  acc *= f.grid().cell_volume();
  return m * static_cast<double>(std::pow(acc, 1.0L / p));
}

}  // namespace

void norm_constant_exponent(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const auto& tol = ctx.config().tolerances;
  Rng rng(ctx.seed_for(r.check_id));
  int worst = 0;
  double worst_p = 0.0;
  for (int k = 0; k < kCases; ++k) {
    const GridFunction f = random_function(grid, rng);
    const double p = rng.uniform(1.1, 8.0);
    const double got = luxemburg_norm(f, VariableExponent::constant(grid, p), tol).value;
    const double want = closed_form_norm(f, p);
    const double err = std::abs(got - want) / want;
    if (err > r.measured || k == 0) {
      r.measured = err;
      worst = k;
      worst_p = p;
    }
  }
  r.bound = 1e-8;
  r.witness = {{"case", worst}, {"p", worst_p}};
  r.details = {{"cases", kCases}, {"cells", grid.size()}};
}

void norm_homogeneity(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const auto& tol = ctx.config().tolerances;
  Rng rng(ctx.seed_for(r.check_id));
  int worst = 0;
  for (int k = 0; k < kCases; ++k) {
    const GridFunction f = random_function(grid, rng);
    const VariableExponent p = random_log_decay(grid, rng, 1.2, 6.0);
    const double c = std::pow(10.0, rng.uniform(-3.0, 3.0)) * (rng.unit() < 0.5 ? -1.0 : 1.0);
    const double lhs = luxemburg_norm(f.scaled(c), p, tol).value;
    const double rhs = std::abs(c) * luxemburg_norm(f, p, tol).value;
    const double err = std::abs(lhs - rhs) / rhs;
    if (err > r.measured) {
      r.measured = err;
      worst = k;
    }
  }
  r.bound = 1e-8;
  r.witness = {{"case", worst}};
  r.details = {{"cases", kCases}};
}

void norm_power_rule(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const auto& tol = ctx.config().tolerances;
  Rng rng(ctx.seed_for(r.check_id));
  const double powers[] = {0.5, 2.0, 3.0};
  int worst = 0;
  for (int k = 0; k < kCases; ++k) {
    const double s = powers[k % 3];
    const GridFunction f = random_function(grid, rng);
    const VariableExponent p = random_log_decay(grid, rng, 2.2, 6.0);
    const double lhs = luxemburg_norm(f.abs().map([s](double v) { return std::pow(v, s); }), p, tol).value;
    const double rhs = std::pow(luxemburg_norm(f, p.scaled(s), tol).value, s);
    const double err = std::abs(lhs - rhs) / rhs;
    if (err > r.measured) {
      r.measured = err;
      worst = k;
    }
  }
  r.bound = 1e-7;
  r.witness = {{"case", worst}, {"s", powers[worst % 3]}};
  r.details = {{"cases", kCases}, {"powers", {0.5, 2.0, 3.0}}};
}

void norm_unit_modular(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const auto& tol = ctx.config().tolerances;
  Rng rng(ctx.seed_for(r.check_id));
  int worst = 0;
  for (int k = 0; k < kCases; ++k) {
    const GridFunction f = random_function(grid, rng);
    const VariableExponent p = random_log_decay(grid, rng, 1.2, 6.0);
    const double norm = luxemburg_norm(f, p, tol).value;
    const double err = std::abs(modular(f, p, norm) - 1.0);
    if (err > r.measured) {
      r.measured = err;
      worst = k;
    }
  }
  r.bound = 1e-10;
  r.witness = {{"case", worst}};
  r.details = {{"cases", kCases}};
}

void norm_product_rule(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const auto& tol = ctx.config().tolerances;
  Rng rng(ctx.seed_for(r.check_id));
  int worst = 0;
  double worst_theory = 0.0;
  for (int k = 0; k < kCases; ++k) {
    const GridFunction f = random_function(grid, rng);
    const GridFunction g = random_function(grid, rng);
    const VariableExponent p1 = random_log_decay(grid, rng, 2.2, 6.0);
    const VariableExponent p2 = random_log_decay(grid, rng, 2.2, 6.0);
    std::vector<double> pv(grid.size());
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) {
      pv[i] = 1.0 / (1.0 / p1[i] + 1.0 / p2[i]);
      a = std::max(a, pv[i] / p1[i]);
      b = std::max(b, pv[i] / p2[i]);
    }
    const VariableExponent p(GridFunction(grid, std::move(pv)), std::nullopt);
    const double lhs = luxemburg_norm(f * g, p, tol).value;
    const double rhs = luxemburg_norm(f, p1, tol).value * luxemburg_norm(g, p2, tol).value;
    const double c = ratio(lhs, rhs);
    if (c > r.measured) {
      r.measured = c;
      worst = k;
      worst_theory = a + b;
    }
  }
  r.bound = 2.0;
  r.witness = {{"case", worst}};
  r.details = {{"cases", kCases}, {"constant_bound_at_witness", worst_theory}};
}

void holder_variable(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const auto& tol = ctx.config().tolerances;
  Rng rng(ctx.seed_for(r.check_id));
  const int cases = 500;
  int worst = 0;
  double worst_kh = 0.0;
  int over_kh = 0;
  for (int k = 0; k < cases; ++k) {
    const GridFunction f = random_function(grid, rng);
    const GridFunction g = random_function(grid, rng);
    const VariableExponent p = random_log_decay(grid, rng, 1.2, 6.0);
    const double lhs = integrate((f * g).abs());
    const double rhs = luxemburg_norm(f, p, tol).value * luxemburg_norm(g, conjugate(p), tol).value;
    const double c = ratio(lhs, rhs);
    if (c > holder_constant(p) * (1.0 + 1e-8)) ++over_kh;
    if (c > r.measured) {
      r.measured = c;
      worst = k;
      worst_kh = holder_constant(p);
    }
  }
  r.bound = 2.0;
  r.witness = {{"case", worst}};
  r.details = {{"cases", cases},
               {"holder_constant_at_witness", worst_kh},
               {"cases_above_holder_constant", over_kh}};
}

void holder_constant(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const auto& tol = ctx.config().tolerances;
  Rng rng(ctx.seed_for(r.check_id));
  int worst = 0;
  for (int k = 0; k < kCases; ++k) {
    const GridFunction f = random_function(grid, rng);
    const GridFunction g = random_function(grid, rng);
    const VariableExponent p = VariableExponent::constant(grid, rng.uniform(1.1, 8.0));
    const double lhs = integrate((f * g).abs());
    const double rhs = luxemburg_norm(f, p, tol).value * luxemburg_norm(g, conjugate(p), tol).value;
    const double c = ratio(lhs, rhs);
    if (c > r.measured) {
      r.measured = c;
      worst = k;
    }
  }
  r.bound = 1.0;
  r.slack = 1e-8;
  r.witness = {{"case", worst}};
  r.details = {{"cases", kCases}};
}

void exponent_conjugacy(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  Rng rng(ctx.seed_for(r.check_id));
  double sum_err = 0.0;
  double inv_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    const VariableExponent p = random_log_decay(grid, rng, 1.2, 6.0);
    const VariableExponent pc = conjugate(p);
    const VariableExponent pcc = conjugate(pc);
    for (std::size_t i = 0; i < p.size(); ++i) {
      sum_err = std::max(sum_err, std::abs(1.0 / p[i] + 1.0 / pc[i] - 1.0));
      inv_err = std::max(inv_err, std::abs(pcc[i] - p[i]));
    }
  }
  const VariableExponent pc = conjugate(ctx.main_system().p());
  const auto& p = ctx.main_system().p();
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum_err = std::max(sum_err, std::abs(1.0 / p[i] + 1.0 / pc[i] - 1.0));
  }
  r.measured = std::max(sum_err, inv_err);
  r.bound = 1e-14;
  r.details = {{"reciprocal_sum_error", sum_err}, {"involution_error", inv_err}, {"exponents", 51}};
}

void exponent_system_closure(Context& ctx, CheckReport& r) {
  const ExponentSystem& sys = ctx.main_system();
  r.measured = sys.relation_residual();
  r.bound = 1e-12;
  r.details = {{"alpha", sys.alpha()},
               {"beta", sys.beta()},
               {"p_minus", sys.p().p_minus()},
               {"p_plus", sys.p().p_plus()},
               {"delta_minus", sys.delta().min()},
               {"delta_plus", sys.delta().max()},
               {"q_minus", sys.q().p_minus()},
               {"q_plus", sys.q().p_plus()}};
}

void exponent_decay_hypothesis(Context& ctx, CheckReport& r) {
  const VariableExponent& p = ctx.main_system().p();
  if (!p.p_infty()) {
    r.details = {{"p_infty", nullptr}, {"note", "no declared limit at infinity"}};
    return;
  }
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t cell = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double v = *p.p_infty() - p[k];
    if (v > worst) {
      worst = v;
      cell = k;
    }
  }
  r.measured = worst;
  r.bound = 0.0;
  r.slack = 1e-12;
  r.witness = cell_witness(p.grid(), cell);
  r.details = {{"p_infty", *p.p_infty()}, {"p_minus", p.p_minus()}};
}

void log_holder_family(Context& ctx, CheckReport& r) {
  const VariableExponent& p = ctx.main_system().p();
  const LogHolderEstimate est = log_holder_constants(p);
  const auto& spec = ctx.config().exponent;
  r.measured = est.c_infty;
  if (spec.family == "log_decay") {
    r.bound = spec.params.at("c");
    r.slack = 1e-9;
  } else if (spec.family == "constant") {
    r.bound = 0.0;
    r.slack = 1e-12;
  }
  if (est.approximate) r.schedule_flags.push_back("pairs:subsampled");
  r.witness = cell_witness(p.grid(), est.worst_decay_cell);
  r.details = {{"c_log", est.c_log},
               {"c_infty", est.c_infty},
               {"worst_pair", pair_witness(p.grid(), est.worst_pair[0], est.worst_pair[1])}};
}

}  // namespace varlip::harness::detail
