#include <algorithm>
#include <cmath>
#include <string>

#include "varlip/commutators.hpp"
#include "varlip/harness/checks_impl.hpp"
#include "varlip/lipschitz.hpp"
#include "varlip/operators.hpp"
#include "varlip/reference.hpp"

namespace varlip::harness::detail {

namespace {

double sup_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

struct Worst {
  double err = 0.0;
  Json where;
  void consider(double e, Json w) {
    if (e > err || where.is_null()) {
      err = e;
      where = std::move(w);
    }
  }
};

Grid oracle_grid(const Context& ctx, int dim) {
  const auto& c = ctx.config();
  return Grid(dim, {c.lower[0], c.lower[1]}, c.side, dim == 1 ? 32 : 12);
}

}  // namespace

void indicator_fractional_maximal(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const MaximalConfig cfg = ctx.schedule(grid);
  Rng rng(ctx.seed_for(r.check_id));
  const auto cubes = random_cubes(grid, rng, 100, active_widths(ctx, grid));
  const int n = grid.dim();
  Worst worst;
  for (double a : {0.0, 0.25 * n, 0.5 * n}) {
    for (std::size_t k = 0; k < cubes.size(); ++k) {
      const Cube& q = cubes[k];
      const GridFunction m = fractional_maximal(indicator(grid, q), a, cfg);
      const double want = std::pow(q.measure, a / n);
      for (std::size_t x : cube_cells(grid, q)) {
        worst.consider(std::abs(m[x] - want) / want,
                       {{"alpha", a}, {"cube", cube_witness(grid, q)}, {"cell", x}});
      }
    }
  }
  r.measured = worst.err;
  r.bound = 1e-12;
  r.witness = worst.where;
  r.schedule_flags = schedule_flags(grid, cfg);
  r.details = {{"cubes", cubes.size()}, {"alphas", {0.0, 0.25 * n, 0.5 * n}}};
}

void indicator_sharp_maximal(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const MaximalConfig cfg = ctx.schedule(grid);
  Rng rng(ctx.seed_for(r.check_id));
  const auto cubes = middle_third_cubes(grid, rng, 20, active_widths(ctx, grid));
  const double lo = 0.5 - 5.0 * grid.spacing();
  const double hi = 0.5 + 1e-12;
  double vmin = 1.0;
  double vmax = 0.0;
  Worst worst;
  for (const Cube& q : cubes) {
    const GridFunction m = sharp_maximal(indicator(grid, q), cfg);
    for (std::size_t x : cube_cells(grid, q)) {
      vmin = std::min(vmin, m[x]);
      vmax = std::max(vmax, m[x]);
      worst.consider(std::max(lo - m[x], m[x] - hi),
                     {{"cube", cube_witness(grid, q)}, {"cell", cell_witness(grid, x)}, {"value", m[x]}});
    }
  }
  r.measured = worst.err;
  r.bound = 0.0;
  r.witness = worst.where;
  r.schedule_flags = schedule_flags(grid, cfg);
  r.details = {{"cubes", cubes.size()}, {"interval", {lo, hi}}, {"min_value", vmin}, {"max_value", vmax}};
}

void domination_potential(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const GridFunction& delta = ctx.probe_system().delta();
  const auto& fam = ctx.family(grid);
  Worst worst;
  for (std::size_t k = 0; k < fam.members.size(); ++k) {
    const GridFunction& m = ctx.family_variable_delta(k);
    const GridFunction pot = potential(fam.members[k].abs(), delta);
    for (std::size_t x = 0; x < grid.size(); ++x) {
      worst.consider(ratio(m[x], pot[x]), {{"member", k}, {"cell", cell_witness(grid, x)}});
    }
  }
  r.measured = worst.err;
  if (grid.dim() == 1) {
    r.bound = 1.0;
    r.slack = 1e-9;
  }
  r.witness = worst.where;
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"members", fam.members.size()},
               {"potential_mode", grid.dim() == 1 ? "analytic_cell" : "exclude_diagonal"},
               {"note", grid.dim() == 1 ? "constant 1 asserted" : "constant measured only"}};
}

void potential_ratio(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const ExponentSystem sys = ctx.system_on(grid, 0.0);
  const GridFunction& delta = sys.delta();
  const auto est = operator_norm_estimate([&](const GridFunction& f) { return potential(f, delta); },
                                          sys.r(), sys.q(), ctx.family(grid).members,
                                          ctx.config().tolerances);
  r.measured = est.ratio;
  r.witness = {{"member", est.member}};
  r.details = {{"per_member", values_json(est.per_member)}, {"note", "lower bound for the operator norm"}};
}

void oracle_operators(Context& ctx, CheckReport& r) {
  Worst worst;
  int compared = 0;
  for (int dim : {1, 2}) {
    const Grid grid = oracle_grid(ctx, dim);
    const MaximalConfig full{full_schedule(grid.cells_per_axis()), {}};
    const ExponentSystem sys = ctx.system_on(grid, 0.0);
    const GridFunction& delta = sys.delta();
    const double alpha = 0.3 * dim;
    const TestFamily fam = make_test_family(grid, ctx.seed(), 4);
    const auto symbols = symbol_corpus(grid, ctx.seed(), 3);
    const GridFunction zero = GridFunction::constant(grid, 0.0);
    const GridFunction alpha_order = GridFunction::constant(grid, alpha);
    const int n = grid.cells_per_axis();
    const Cube q0 = Cube::make(grid, {n / 4, dim == 1 ? 0 : n / 4}, n / 2);
    const double gamma = 1.3 * dim;

    const auto record = [&](const std::string& op, std::size_t member, const GridFunction& got,
                            const GridFunction& want, double scale) {
      ++compared;
      worst.consider(ratio(sup_diff(got, want), scale),
                     {{"operator", op}, {"dim", dim}, {"member", member}});
    };
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
      const GridFunction& f = fam.members[k];
      const auto check = [&](const std::string& op, const GridFunction& got, const GridFunction& want) {
        record(op, k, got, want, want.max_abs());
      };
      check("hl_maximal", hl_maximal(f, full), reference::fractional_maximal(f, zero));
      check("fractional_maximal", fractional_maximal(f, alpha, full),
            reference::fractional_maximal(f, alpha_order));
      check("variable_fractional_maximal", variable_fractional_maximal(f, delta, full),
            reference::fractional_maximal(f, delta));
      check("sharp_maximal", sharp_maximal(f, full), reference::sharp_maximal(f));
      check("restricted_fractional_maximal",
            restricted_fractional_maximal(f, gamma, q0, full_schedule(q0.width)).values,
            reference::fractional_maximal(f, GridFunction::constant(grid, gamma),
                                          reference::Scope{{}, q0}));
      check("potential", potential(f, delta), reference::potential(f, delta));
    }
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      const GridFunction& b = symbols[k].values;
      const GridFunction& f = fam.members[k];
      const GridFunction ref = reference::maximal_commutator(b, f, alpha);
      record("maximal_commutator", k, maximal_commutator(b, f, alpha, full), ref, ref.max_abs());
      record("maximal_commutator_level_split", k,
             maximal_commutator(b, f, alpha, full, CommutatorKernel::level_split), ref, ref.max_abs());
      const GridFunction bm = b * reference::fractional_maximal(f, alpha_order);
      const GridFunction mb = reference::fractional_maximal(b * f, alpha_order);
      record("nonlinear_fractional_commutator", k, nonlinear_fractional_commutator(b, f, alpha, full),
             bm - mb, std::max(bm.max_abs(), mb.max_abs()));
      const GridFunction bs = b * reference::sharp_maximal(f);
      const GridFunction sb = reference::sharp_maximal(b * f);
      record("nonlinear_sharp_commutator", k, nonlinear_sharp_commutator(b, f, full), bs - sb,
             std::max(bs.max_abs(), sb.max_abs()));
    }
  }
  r.measured = worst.err;
  r.bound = 1e-12;
  r.witness = worst.where;
  r.schedule_flags = {"schedule:full"};
  r.details = {{"comparisons", compared}, {"cells_1d", 32}, {"cells_2d", 12}};
}

void oracle_lipschitz(Context& ctx, CheckReport& r) {
  const NormTolerances tight{0.0, 1e-15, 400};
  Worst worst;
  int compared = 0;
  for (int dim : {1, 2}) {
    const Grid grid = oracle_grid(ctx, dim);
    const ExponentSystem sys = ctx.system_on(grid, 0.0);
    for (const auto& s : symbol_corpus(grid, ctx.seed(), 5)) {
      const double pw = pointwise_lipschitz_norm(s.values, sys.delta()).norm;
      const double pw_ref = reference::pointwise_lipschitz_norm(s.values, sys.delta());
      worst.consider(std::abs(pw - pw_ref) / pw_ref, {{"norm", "pointwise"}, {"dim", dim}, {"symbol", s.label}});
      const double in = integral_lipschitz_norm(s.values, sys, full_schedule(grid.cells_per_axis()), tight).norm;
      const double in_ref = reference::integral_lipschitz_norm(s.values, sys.beta(), sys.p(), {}, tight);
      worst.consider(std::abs(in - in_ref) / in_ref, {{"norm", "integral"}, {"dim", dim}, {"symbol", s.label}});
      compared += 2;
    }
  }
  r.measured = worst.err;
  r.bound = 1e-12;
  r.witness = worst.where;
  r.schedule_flags = {"schedule:full", "pairs:exhaustive"};
  r.details = {{"comparisons", compared}};
}

void nonsublinearity_witness(Context& ctx, CheckReport& r) {
  (void)ctx;
  const Grid g(1, {-1.0, 0.0}, 2.0, 16);
  const auto b = GridFunction::sample(g, [](const Point& x) { return x[0] < 0.0 ? 1.0 : 2.0; });
  std::vector<double> u(16, 0.0);
  std::vector<double> v(16, 0.0);
  for (int k = 10; k < 14; ++k) u[static_cast<std::size_t>(k)] = 1.0;
  v[4] = 10.0;
  const GridFunction f = GridFunction(g, u) + GridFunction(g, v);
  const GridFunction h = GridFunction(g, v).scaled(-1.0);
  const GridFunction sum = nonlinear_fractional_commutator(b, f + h, 0.0);
  const GridFunction cf = nonlinear_fractional_commutator(b, f, 0.0);
  const GridFunction ch = nonlinear_fractional_commutator(b, h, 0.0);
  double best = std::numeric_limits<double>::infinity();
  std::size_t cell = 0;
  for (std::size_t x = 0; x < g.size(); ++x) {
    const double gap = std::abs(cf[x]) + std::abs(ch[x]) - std::abs(sum[x]);
    if (gap < best) {
      best = gap;
      cell = x;
    }
  }
  r.measured = best;
  r.bound = -1e-6;
  r.witness = cell_witness(g, cell);
  r.details = {{"lhs", std::abs(sum[cell])},
               {"rhs", std::abs(cf[cell]) + std::abs(ch[cell])},
               {"note", "measured = |[b,M]f| + |[b,M]g| - |[b,M](f+g)| at the witness; negative breaks sublinearity"}};
}

}  // namespace varlip::harness::detail
