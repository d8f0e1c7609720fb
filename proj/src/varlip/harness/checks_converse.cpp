#include <algorithm>
#include <cmath>

#include "varlip/commutators.hpp"
#include "varlip/harness/checks_impl.hpp"
#include "varlip/operators.hpp"

namespace varlip::harness::detail {

namespace {

constexpr int kPairs = 100;

// |b_Q| <= c M#(b chi_Q) on Q. In 1D c = 2 (a doubling interval); in 2D the
// best grid square Q' containing Q gives m = (w/w')^2 and c = 1/(2m(1-m)).
double mean_bound_constant(const Grid& grid, int w) {
  if (grid.dim() == 1) return 2.0;
  double best = 0.0;
  for (int w2 = w + 1; w2 <= grid.cells_per_axis(); ++w2) {
    const double m = static_cast<double>(w * w) / static_cast<double>(w2 * w2);
    best = std::max(best, 2.0 * m * (1.0 - m));
  }
  return 1.0 / best;
}

struct ConverseCase {
  GridFunction b;
  Cube q;
  double mean = 0.0;
  double c = 2.0;
  std::vector<std::size_t> cells;
  GridFunction sharp;  // M#(b chi_Q)
};

// Random piecewise-constant symbols paired with middle-third cubes.
std::vector<ConverseCase> converse_cases(Context& ctx, const std::string& id, bool need_sharp) {
  const Grid& grid = ctx.probe_grid();
  Rng rng(ctx.seed_for(id));
  const auto cubes = middle_third_cubes(grid, rng, kPairs, active_widths(ctx, grid));
  std::vector<ConverseCase> out;
  for (const Cube& q : cubes) {
    GridFunction b = random_piecewise_constant(grid, rng);
    const GridFunction bq = b * indicator(grid, q);
    ConverseCase c{b, q, cube_average(b, q), mean_bound_constant(grid, q.width), cube_cells(grid, q),
                   need_sharp ? sharp_maximal(bq, ctx.schedule(grid)) : bq};
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

void converse_mean_bound(Context& ctx, CheckReport& r) {
  const auto cases = converse_cases(ctx, r.check_id, true);
  const Grid& grid = ctx.probe_grid();
  std::size_t worst = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t x : c.cells) m = std::min(m, c.sharp[x]);
    const double v = ratio(std::abs(c.mean), c.c * m);
    if (v > r.measured) {
      r.measured = v;
      worst = k;
    }
  }
  r.bound = 1.0;
  r.slack = 1e-12;
  r.witness = {{"case", worst}, {"cube", cube_witness(grid, cases[worst].q)}};
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"pairs", cases.size()},
               {"constant", grid.dim() == 1 ? Json(2.0) : Json("1/(2m(1-m)), m = (w/w')^2")},
               {"note", "measured = |b_Q| / (c min_Q M#(b chi_Q))"}};
}

void converse_mean_split(Context& ctx, CheckReport& r) {
  const auto cases = converse_cases(ctx, r.check_id, false);
  const Grid& grid = ctx.probe_grid();
  std::size_t worst = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    double below = 0.0;
    double above = 0.0;
    for (std::size_t x : c.cells) {
      const double d = std::abs(c.b[x] - c.mean) * grid.cell_volume();
      (c.b[x] <= c.mean ? below : above) += d;
    }
    const double scale = std::max(c.b.max_abs(), 1e-300) * c.q.measure;
    const double v = std::abs(below - above) / scale;
    if (v > r.measured) {
      r.measured = v;
      worst = k;
    }
  }
  r.bound = 1e-10;
  r.witness = {{"case", worst}, {"cube", cube_witness(grid, cases[worst].q)}};
  r.details = {{"pairs", cases.size()}, {"note", "| int_E |b - b_Q| - int_{Q\\E} |b - b_Q| | / (|b|_inf |Q|)"}};
}

void converse_split_inequality(Context& ctx, CheckReport& r) {
  const auto cases = converse_cases(ctx, r.check_id, true);
  const Grid& grid = ctx.probe_grid();
  double pointwise = 0.0;
  double integrated = 0.0;
  Json where = nullptr;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const double scale = std::max(c.b.max_abs(), 1e-300);
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t x : c.cells) {
      const double dev = std::abs(c.b[x] - c.mean);
      lhs += dev;
      if (c.b[x] > c.mean) continue;
      const double bound = std::abs(c.b[x] - c.c * c.sharp[x]);
      rhs += bound;
      const double excess = (dev - bound) / scale;
      if (excess > pointwise || where.is_null()) {
        pointwise = std::max(pointwise, excess);
        where = {{"case", k}, {"cell", cell_witness(grid, x)}};
      }
    }
    integrated = std::max(integrated, (lhs - 2.0 * rhs) * grid.cell_volume() / (scale * c.q.measure));
  }
  r.measured = std::max(pointwise, integrated);
  r.bound = 0.0;
  r.slack = 1e-12;
  r.witness = where;
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"pairs", cases.size()},
               {"pointwise_excess", pointwise},
               {"integrated_excess", integrated},
               {"note", "|b - b_Q| <= |b - c M#(b chi_Q)| on E, and int_Q |b - b_Q| <= 2 int_E |b - c M#(b chi_Q)|"}};
}

void converse_fractional_split_inequality(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const double alpha = ctx.config().alpha;
  const int n = grid.dim();
  Rng rng(ctx.seed_for(r.check_id));
  const auto widths = active_widths(ctx, grid);
  const auto cubes = middle_third_cubes(grid, rng, kPairs, widths);
  Json where = nullptr;
  double worst = 0.0;
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    const Cube& q = cubes[k];
    const GridFunction b = random_piecewise_constant(grid, rng);
    WidthSchedule inner;
    for (int w : widths) {
      if (w <= q.width) inner.push_back(w);
    }
    const GridFunction m = restricted_fractional_maximal(b, alpha, q, inner).values;
    const double mean = cube_average(b, q);
    const double norm = std::pow(q.measure, -alpha / n);
    const double scale = std::max(b.max_abs(), 1e-300);
    for (std::size_t x : cube_cells(grid, q)) {
      if (b[x] > mean) continue;
      const double excess = (std::abs(b[x] - mean) - std::abs(b[x] - norm * m[x])) / scale;
      if (excess > worst || where.is_null()) {
        worst = std::max(worst, excess);
        where = {{"case", k}, {"cube", cube_witness(grid, q)}, {"cell", cell_witness(grid, x)}};
      }
    }
  }
  r.measured = worst;
  r.bound = 0.0;
  r.slack = 1e-12;
  r.witness = where;
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"pairs", cubes.size()}, {"alpha", alpha}};
}

void commutator_indicator_identity(Context& ctx, CheckReport& r) {
  const Grid grid = ctx.probe_grid().with_cells(std::min(ctx.probe_grid().cells_per_axis(),
                                                         ctx.probe_grid().dim() == 1 ? 64 : 16));
  const int n = grid.dim();
  const MaximalConfig full{full_schedule(grid.cells_per_axis()), {}};
  Rng rng(ctx.seed_for(r.check_id));
  const auto cubes = random_cubes(grid, rng, 20, full_schedule(grid.cells_per_axis()));
  std::vector<double> alphas{0.0, 0.3 * n};
  if (ctx.config().alpha != 0.0 && ctx.config().alpha != 0.3 * n) alphas.push_back(ctx.config().alpha);
  double worst = 0.0;
  Json where = nullptr;
  for (double alpha : alphas) {
    for (std::size_t k = 0; k < cubes.size(); ++k) {
      const Cube& q = cubes[k];
      const GridFunction b = random_piecewise_constant(grid, rng);
      const GridFunction lhs = nonlinear_fractional_commutator(b, indicator(grid, q), alpha, full);
      const GridFunction m = restricted_fractional_maximal(b, alpha, q, full_schedule(q.width)).values;
      const double norm = std::pow(q.measure, -alpha / n);
      const double scale = std::max(b.max_abs(), 1e-300);
      for (std::size_t x : cube_cells(grid, q)) {
        const double err = std::abs(norm * lhs[x] - (b[x] - norm * m[x])) / scale;
        if (err > worst || where.is_null()) {
          worst = std::max(worst, err);
          where = {{"alpha", alpha}, {"cube", cube_witness(grid, q)}, {"cell", cell_witness(grid, x)}};
        }
      }
    }
  }
  r.measured = worst;
  r.bound = 1e-10;
  r.witness = where;
  r.schedule_flags = {"schedule:full"};
  r.details = {{"cells_per_axis", grid.cells_per_axis()}, {"cubes", cubes.size()}, {"alphas", alphas}};
}

void negative_part_probe(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.main_grid();
  const ExponentSystem& sys = ctx.main_system();
  const double centre = grid.lower(0) + 0.5 * grid.side();
  const GridFunction signed_b = GridFunction::sample(grid, [&](const Point& x) { return x[0] - centre; });
  const GridFunction positive_b = signed_b.shifted(-signed_b.min());
  const int n = grid.cells_per_axis();
  const int dim = grid.dim();
  const int c = n / 4;  // b < 0 around the quarter point
  std::vector<double> widths;
  std::vector<double> signed_avg;
  std::vector<double> positive_avg;
  std::vector<double> rhs_scale;
  const double exponent = 1.0 / sys.beta() + 1.0 / sys.p_conj().p_plus() - 1.0;
  const auto negative_average = [&](const GridFunction& b, const Cube& q) {
    double s = 0.0;
    for (std::size_t x : cube_cells(grid, q)) s += std::max(-b[x], 0.0);
    return s / static_cast<double>(dim == 1 ? q.width : q.width * q.width);
  };
  for (int half = 0; 2 * half + 1 <= n / 4; half = half == 0 ? 1 : 2 * half) {
    const int w = 2 * half + 1;
    const Cube q = Cube::make(grid, {c - half, dim == 1 ? 0 : n / 2 - half}, w);
    widths.push_back(w);
    signed_avg.push_back(negative_average(signed_b, q));
    positive_avg.push_back(negative_average(positive_b, q));
    rhs_scale.push_back(std::pow(q.measure, exponent));
  }
  const double floor = *std::min_element(signed_avg.begin(), signed_avg.end());
  const double leak = *std::max_element(positive_avg.begin(), positive_avg.end());
  r.measured = ratio(leak, floor);
  if (floor == 0.0) r.measured = std::numeric_limits<double>::infinity();
  r.bound = 0.0;
  r.witness = cell_witness(grid, grid.flat(c, dim == 1 ? 0 : n / 2));
  r.details = {{"widths", values_json(widths)},
               {"signed_negative_average", values_json(signed_avg)},
               {"nonnegative_negative_average", values_json(positive_avg)},
               {"power_of_measure", values_json(rhs_scale)},
               {"exponent", exponent},
               {"note", "b with b- != 0 keeps a positive negative-part average as |Q| shrinks while |Q|^exponent -> 0; measured = nonnegative leak / signed floor"}};
}

}  // namespace varlip::harness::detail
