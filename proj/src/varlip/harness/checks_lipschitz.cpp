#include <algorithm>
#include <cmath>

#include "varlip/error.hpp"
#include "varlip/harness/checks_impl.hpp"
#include "varlip/lipschitz.hpp"
#include "varlip/norms.hpp"
#include "varlip/reference.hpp"

namespace varlip::harness::detail {

namespace {

// max over cubes of ||chi_Q||_a ||chi_Q||_b / |Q|^power.
void duality_sweep(Context& ctx, CheckReport& r, const VariableExponent& a,
                   const VariableExponent& b, double power, bool centred) {
  const Grid& grid = a.grid();
  const auto& tol = ctx.config().tolerances;
  double vmax = 0.0;
  double vmin = std::numeric_limits<double>::infinity();
  Cube arg_max;
  Cube arg_dev;
  double dev = 0.0;
  const auto cubes = enumerate_cubes(grid, active_widths(ctx, grid));
  for (const Cube& q : cubes) {
    const double v = indicator_norm(q, a, tol).value * indicator_norm(q, b, tol).value /
                     std::pow(q.measure, power);
    if (v > vmax) {
      vmax = v;
      arg_max = q;
    }
    vmin = std::min(vmin, v);
    if (std::abs(v - 1.0) > dev) {
      dev = std::abs(v - 1.0);
      arg_dev = q;
    }
  }
  if (centred) {
    r.measured = dev;
    r.bound = 1e-6;
    r.witness = cube_witness(grid, arg_dev);
  } else {
    r.measured = vmax;
    r.bound = 2.0;
    r.witness = cube_witness(grid, arg_max);
  }
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"cubes", cubes.size()}, {"max", vmax}, {"min", vmin}};
}

VariableExponent fractional_partner(const VariableExponent& p, double gamma) {
  const int n = p.grid().dim();
  if (gamma > 0.0 && !(p.p_plus() < n / gamma)) {
    fail(ErrorCode::hypothesis, "hypothesis violated: p_+ < n/gamma with p_+ = " +
                                    format_double(p.p_plus()) + ", gamma = " + format_double(gamma));
  }
  return VariableExponent(p.values().map([&](double v) { return 1.0 / (1.0 / v - gamma / n); }),
                          std::nullopt);
}

}  // namespace

void lemma_indicator_duality(Context& ctx, CheckReport& r) {
  const ExponentSystem& sys = ctx.probe_system();
  duality_sweep(ctx, r, sys.q(), sys.q_conj(), 1.0, false);
  r.details["exponent"] = "q";
}

void lemma_indicator_duality_constant(Context& ctx, CheckReport& r) {
  const ExponentSystem& sys = ctx.probe_system();
  const VariableExponent q = VariableExponent::constant(sys.grid(), sys.q().p_minus());
  duality_sweep(ctx, r, q, conjugate(q), 1.0, true);
  r.details["exponent"] = q[0];
}

void lemma_indicator_fractional_duality(Context& ctx, CheckReport& r) {
  const ExponentSystem& sys = ctx.probe_system();
  const double gamma = ctx.config().gamma();
  const int n = sys.dim();
  duality_sweep(ctx, r, fractional_partner(sys.p(), gamma), sys.p_conj(), 1.0 - gamma / n, false);
  r.details["gamma"] = gamma;
}

void lemma_indicator_fractional_duality_constant(Context& ctx, CheckReport& r) {
  const ExponentSystem& sys = ctx.probe_system();
  const double gamma = ctx.config().gamma();
  const int n = sys.dim();
  const VariableExponent p = VariableExponent::constant(sys.grid(), sys.p().p_minus());
  duality_sweep(ctx, r, fractional_partner(p, gamma), conjugate(p), 1.0 - gamma / n, true);
  r.details["gamma"] = gamma;
  r.details["exponent"] = p[0];
}

void lemma_small_cube_norm(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const VariableExponent& p = ctx.main_system().p();
  const auto& tol = ctx.config().tolerances;
  const double cap = ctx.config().lemma_small_cube;
  std::size_t count = 0;
  Cube worst;
  for (int w : active_widths(ctx, grid)) {
    if (cube_measure(grid, w) > cap) break;
    for (const Cube& q : enumerate_cubes(grid, {w})) {
      const double v = indicator_norm(q, p, tol).value / std::pow(q.measure, 1.0 / p.p_plus());
      ++count;
      if (v > r.measured) {
        r.measured = v;
        worst = q;
      }
    }
  }
  r.bound = 1.0;
  r.slack = 1e-9;
  if (count > 0) r.witness = cube_witness(grid, worst);
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"cubes", count}, {"measure_cap", cap}, {"p_plus", p.p_plus()}};
}

void lipschitz_equivalence(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const ExponentSystem& sys = ctx.probe_system();
  const auto& corpus = ctx.corpus(grid);
  const IntegralLipschitzEvaluator integral(sys.beta(), sys.p(), active_widths(ctx, grid),
                                            ctx.config().tolerances);
  const double kh = holder_constant(sys.p());
  const double factor = diameter_factor(grid.dim(), sys.delta().max());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::size_t worst = 0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const double pw = ctx.corpus_lipschitz(k);
    const double in = integral(corpus[k].values).norm;
    const double v = ratio(in, kh * factor * pw);
    if (v > r.measured) {
      r.measured = v;
      worst = k;
    }
    lo = std::min(lo, ratio(pw, in));
    hi = std::max(hi, ratio(pw, in));
  }
  r.bound = 1.0;
  r.slack = 1e-6;
  r.witness = {{"symbol", worst}, {"label", corpus[worst].label}};
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"symbols", corpus.size()},
               {"holder_constant", kh},
               {"diameter_factor", factor},
               {"pointwise_over_integral_min", lo},
               {"pointwise_over_integral_max", hi},
               {"note", "measured = integral / (K_H * factor * pointwise); the reverse ratio is reported only"}};
}

void lipschitz_bmo_reduction(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const NormTolerances tight{0.0, 1e-15, 400};
  const auto widths = active_widths(ctx, grid);
  const double p0 = ctx.probe_system().p().p_minus();
  const VariableExponent p = VariableExponent::constant(grid, p0);
  const IntegralLipschitzEvaluator integral(p0, p, widths, tight);
  std::size_t worst = 0;
  const auto& corpus = ctx.corpus(grid);
  for (std::size_t k = 0; k < 5 && k < corpus.size(); ++k) {
    const double in = integral(corpus[k].values).norm;
    const double bmo = reference::bmo_norm(corpus[k].values, reference::Scope{widths, {}});
    const double err = std::abs(in - bmo) / bmo;
    if (err > r.measured) {
      r.measured = err;
      worst = k;
    }
  }
  r.bound = 1e-10;
  r.witness = {{"symbol", worst}, {"label", corpus[worst].label}};
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"beta", p0}, {"p", p0}};
}

void oscillation_bound(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const GridFunction b = ctx.symbol_on(grid);
  const GridFunction& delta = ctx.probe_system().delta();
  const auto pw = pointwise_lipschitz_norm(b, delta);
  Rng rng(ctx.seed_for(r.check_id));
  const auto cubes = random_cubes(grid, rng, 50, active_widths(ctx, grid));
  for (const Cube& q : cubes) {
    const auto res = oscillation_bound_check(b, delta, q, pw.norm);
    if (res.worst_ratio > r.measured) {
      r.measured = res.worst_ratio;
      r.witness = {{"cube", cube_witness(grid, q)}, {"cell", cell_witness(grid, res.worst_cell)}};
    }
  }
  r.bound = 1.0;
  r.slack = 1e-9;
  if (pw.approximate) r.schedule_flags.push_back("pairs:subsampled");
  r.details = {{"cubes", cubes.size()}, {"pointwise_norm", pw.norm}};
}

void oscillation_sampling_regression(Context& ctx, CheckReport& r) {
  (void)ctx;
  const Grid g(1, {0.0, 0.0}, 1.0, 400);
  const auto b = GridFunction::sample(g, [](const Point& p) { return p[0] + (p[0] > 0.5 ? 0.05 : 0.0); });
  const auto delta = GridFunction::constant(g, 0.1);
  const Cube q = Cube::make(g, {100, 0}, 200);
  const PairSampling sparse{PairSampling::Mode::subsampled, 2, 0, 1};
  const auto stale = pointwise_lipschitz_norm(b, delta, sparse);
  const auto exact = pointwise_lipschitz_norm(b, delta, {PairSampling::Mode::exhaustive});
  const auto with_stale = oscillation_bound_check(b, delta, q, stale.norm);
  const auto with_exact = oscillation_bound_check(b, delta, q, exact.norm);
  // Counts the ways the regression could go wrong.
  r.measured = (with_exact.passed ? 0.0 : 1.0) + (with_stale.passed ? 1.0 : 0.0);
  r.bound = 0.0;
  r.schedule_flags = {"pairs:subsampled", "pairs:exhaustive"};
  r.details = {{"stale_norm", stale.norm},
               {"exact_norm", exact.norm},
               {"stale_worst_ratio", with_stale.worst_ratio},
               {"exact_worst_ratio", with_exact.worst_ratio}};
}

namespace {

Json blowup_details(const BlowupResult& res) {
  Json widths = Json::array();
  for (int w : res.widths) widths.push_back(w);
  return {{"widths", widths},
          {"measures", values_json(res.measures)},
          {"ratios", values_json(res.ratios)},
          {"fitted_points", res.fitted},
          {"slope", res.slope},
          {"predicted_slope", res.predicted},
          {"degenerate_flat", res.degenerate}};
}

Point domain_centre(const Grid& grid) {
  return {grid.lower(0) + 0.5 * grid.side(), grid.dim() == 1 ? 0.0 : grid.lower(1) + 0.5 * grid.side()};
}

}  // namespace

void blowup_step(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const Point x0 = domain_centre(grid);
  const double cut = grid.lower(0) + std::round((x0[0] - grid.lower(0)) / grid.spacing()) * grid.spacing();
  const GridFunction b = GridFunction::sample(grid, [&](const Point& x) { return x[0] > cut ? 1.0 : 0.0; });
  const BlowupResult res = blowup_probe(b, ctx.main_system(), x0, ctx.config().tolerances);
  r.measured = std::abs(res.slope - res.predicted) / std::abs(res.predicted);
  r.bound = 0.2;
  r.witness = {{"vertex", res.vertex}};
  r.details = blowup_details(res);
  r.details["note"] = "measured = |slope - predicted| / |predicted|";
}

void blowup_smooth(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const Point x0 = domain_centre(grid);
  const GridFunction b = GridFunction::sample(grid, [](const Point& x) { return x[0]; });
  const BlowupResult res = blowup_probe(b, ctx.main_system(), x0, ctx.config().tolerances);
  const BlowupResult flat =
      blowup_probe(GridFunction::constant(grid, 1.0), ctx.main_system(), x0, ctx.config().tolerances);
  r.measured = -res.slope;
  r.bound = 0.05;
  r.witness = {{"vertex", res.vertex}};
  r.details = blowup_details(res);
  r.details["constant_symbol_degenerate_flat"] = flat.degenerate;
  r.details["note"] = "measured = -slope";
}

}  // namespace varlip::harness::detail
