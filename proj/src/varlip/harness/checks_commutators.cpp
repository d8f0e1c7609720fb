#include <algorithm>
#include <cmath>

#include "varlip/commutators.hpp"
#include "varlip/harness/checks_impl.hpp"
#include "varlip/lipschitz.hpp"
#include "varlip/norms.hpp"
#include "varlip/operators.hpp"

namespace varlip::harness::detail {

namespace {

struct Domination {
  double ratio = 0.0;
  Json where;
  // floor: absolute rounding allowance on lhs (box sums come from prefix differences).
  void consider(const GridFunction& lhs, const GridFunction& rhs, Json tag, double floor = 0.0) {
    for (std::size_t x = 0; x < lhs.size(); ++x) {
      const double v = detail::ratio(std::max(0.0, std::abs(lhs[x]) - floor), rhs[x]);
      if (v > ratio || where.is_null()) {
        ratio = std::max(ratio, v);
        where = tag;
        where["cell"] = x;
      }
    }
  }
};

// c * factor(x) * g(x), factor = n^{d(x)/2} (1 in 1D).
GridFunction weighted(const GridFunction& g, const GridFunction& delta, double c) {
  std::vector<double> v(g.size());
  for (std::size_t x = 0; x < v.size(); ++x) {
    v[x] = c * diameter_factor(g.grid().dim(), delta[x]) * g[x];
  }
  return GridFunction(g.grid(), std::move(v));
}

// Rounding allowance for b(x) T f(x) - T(b f)(x), T of order alpha.
double rounding_floor(const GridFunction& b, const GridFunction& f, double alpha) {
  const Grid& g = b.grid();
  const double reach = std::max(1.0, std::pow(g.cell_volume() * static_cast<double>(g.size()), alpha / g.dim()));
  return 1e-12 * b.max_abs() * f.max_abs() * reach;
}

}  // namespace

void domination_maximal_commutator(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const GridFunction& delta = ctx.probe_system().delta();
  const auto& corpus = ctx.corpus(grid);
  const auto& fam = ctx.family(grid);
  Domination d;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const double norm = ctx.corpus_lipschitz(s);
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
      d.consider(ctx.corpus_maximal_commutator(s, k),
                 weighted(ctx.family_fractional_delta(k), delta, norm),
                 {{"symbol", s}, {"member", k}});
    }
  }
  r.measured = d.ratio;
  r.bound = 1.0;
  r.slack = 1e-9;
  r.witness = d.where;
  r.schedule_flags = schedule_flags(grid, ctx.schedule(grid));
  r.details = {{"symbols", corpus.size()},
               {"members", fam.members.size()},
               {"alpha", ctx.config().alpha},
               {"note", "M_{alpha,b} f <= |b|_Lip n^{delta/2} M_{alpha+delta} f; ratio reported"}};
}

void domination_nonlinear_fractional(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const double alpha = ctx.config().alpha;
  const auto& corpus = ctx.corpus(grid);
  const auto& fam = ctx.family(grid);
  const MaximalConfig cfg = ctx.schedule(grid);
  Domination d;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
      d.consider(nonlinear_fractional_commutator(corpus[s].values, fam.members[k], alpha, cfg),
                 ctx.corpus_maximal_commutator(s, k), {{"symbol", s}, {"member", k}},
                 rounding_floor(corpus[s].values, fam.members[k], alpha));
    }
  }
  r.measured = d.ratio;
  r.bound = 1.0;
  r.slack = 1e-9;
  r.witness = d.where;
  r.schedule_flags = schedule_flags(grid, cfg);
  r.details = {{"symbols", corpus.size()}, {"members", fam.members.size()}, {"alpha", alpha}};
}

void domination_sharp_commutator(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const GridFunction& delta = ctx.probe_system().delta();
  const auto& corpus = ctx.corpus(grid);
  const auto& fam = ctx.family(grid);
  const MaximalConfig cfg = ctx.schedule(grid);
  std::vector<GridFunction> sharp;
  for (const auto& f : fam.members) sharp.push_back(sharp_maximal(f, cfg));
  Domination d;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const GridFunction& b = corpus[s].values;
    const double norm = ctx.corpus_lipschitz(s);
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
      const GridFunction lhs = b * sharp[k] - sharp_maximal(b * fam.members[k], cfg);
      d.consider(lhs, weighted(ctx.family_variable_delta(k), delta, 2.0 * norm),
                 {{"symbol", s}, {"member", k}}, rounding_floor(b, fam.members[k], 0.0));
    }
  }
  r.measured = d.ratio;
  r.bound = 1.0;
  r.slack = 1e-9;
  r.witness = d.where;
  r.schedule_flags = schedule_flags(grid, cfg);
  r.details = {{"symbols", corpus.size()},
               {"members", fam.members.size()},
               {"constant", 2.0},
               {"note", grid.dim() == 1 ? "|[b,M#]f| <= 2 |b|_Lip M_delta f"
                                        : "|[b,M#]f| <= 2 n^{delta/2} |b|_Lip M_delta f"}};
}

namespace {

struct ForwardResult {
  double pointwise = 0.0;  // max lhs / majorant
  double norms = 0.0;      // max ||lhs||_q / ||majorant||_q
  RatioEstimate lhs_ratio;
  RatioEstimate majorant_ratio;
  Json where;
};

// Runs the pointwise domination and the norm comparison over the family.
ForwardResult forward(const std::vector<GridFunction>& fam, const ExponentSystem& sys,
                      const NormTolerances& tol, const Operator& lhs_op, const Operator& majorant,
                      const GridFunction& b) {
  ForwardResult out;
  Domination d;
  std::vector<GridFunction> lhs;
  std::vector<GridFunction> rhs;
  for (std::size_t k = 0; k < fam.size(); ++k) {
    lhs.push_back(lhs_op(fam[k]));
    rhs.push_back(majorant(fam[k]));
    d.consider(lhs.back(), rhs.back(), {{"member", k}}, rounding_floor(b, fam[k], sys.alpha()));
    const double a = luxemburg_norm(lhs.back(), sys.q(), tol).value;
    const double b = luxemburg_norm(rhs.back(), sys.q(), tol).value;
    out.norms = std::max(out.norms, ratio(a, b));
  }
  out.pointwise = d.ratio;
  out.where = d.where;
  std::size_t k = 0;
  out.lhs_ratio = operator_norm_estimate([&](const GridFunction&) { return lhs[k++]; }, sys.r(),
                                         sys.q(), fam, tol);
  k = 0;
  out.majorant_ratio = operator_norm_estimate([&](const GridFunction&) { return rhs[k++]; }, sys.r(),
                                              sys.q(), fam, tol);
  return out;
}

void fill_forward(CheckReport& r, const ForwardResult& res, double lip, const Grid& grid,
                  const MaximalConfig& cfg) {
  r.measured = std::max(res.pointwise, res.norms);
  r.bound = 1.0;
  r.slack = 1e-9;
  r.witness = res.where;
  r.schedule_flags = schedule_flags(grid, cfg);
  r.details = {{"pointwise_ratio", res.pointwise},
               {"norm_ratio", res.norms},
               {"lipschitz_norm", lip},
               {"commutator_ratio", res.lhs_ratio.ratio},
               {"majorant_ratio", res.majorant_ratio.ratio},
               {"note", "ratios are lower bounds for operator norms from r to q"}};
}

}  // namespace

void forward_sharp_commutator(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const ExponentSystem sys = ctx.system_on(grid, 0.0);
  const GridFunction b = ctx.symbol_on(grid);
  validate_hypotheses(Theorem::sharp_commutator, sys, b);
  const MaximalConfig cfg = ctx.schedule(grid);
  const double lip = pointwise_lipschitz_norm(b, sys.delta()).norm;
  const auto res = forward(
      ctx.family(grid).members, sys, ctx.config().tolerances,
      [&](const GridFunction& f) { return nonlinear_sharp_commutator(b, f, cfg).abs(); },
      [&](const GridFunction& f) {
        return weighted(variable_fractional_maximal(f, sys.delta(), cfg), sys.delta(), 2.0 * lip);
      },
      b);
  fill_forward(r, res, lip, grid, cfg);
}

void forward_maximal_commutator(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const ExponentSystem& sys = ctx.probe_system();
  const GridFunction b = ctx.symbol_on(grid);
  validate_hypotheses(Theorem::maximal_commutator, sys, b);
  const MaximalConfig cfg = ctx.schedule(grid);
  const double lip = pointwise_lipschitz_norm(b, sys.delta()).norm;
  const GridFunction order = sys.delta().shifted(sys.alpha());
  const auto res = forward(
      ctx.family(grid).members, sys, ctx.config().tolerances,
      [&](const GridFunction& f) { return maximal_commutator(b, f, sys.alpha(), cfg); },
      [&](const GridFunction& f) {
        return weighted(variable_fractional_maximal(f, order, cfg), sys.delta(), lip);
      },
      b);
  fill_forward(r, res, lip, grid, cfg);
}

void forward_fractional_commutator(Context& ctx, CheckReport& r) {
  const Grid& grid = ctx.probe_grid();
  const ExponentSystem& sys = ctx.probe_system();
  const GridFunction b = ctx.symbol_on(grid);
  validate_hypotheses(Theorem::fractional_commutator, sys, b);
  const MaximalConfig cfg = ctx.schedule(grid);
  const double lip = pointwise_lipschitz_norm(b, sys.delta()).norm;
  const auto res = forward(
      ctx.family(grid).members, sys, ctx.config().tolerances,
      [&](const GridFunction& f) { return nonlinear_fractional_commutator(b, f, sys.alpha(), cfg).abs(); },
      [&](const GridFunction& f) { return maximal_commutator(b, f, sys.alpha(), cfg); }, b);
  fill_forward(r, res, lip, grid, cfg);
}

namespace {

enum class Which { maximal, fractional, sharp };

void ratio_stability(Context& ctx, CheckReport& r, Which which) {
  const int n0 = ctx.probe_grid().cells_per_axis();
  std::vector<double> ratios;
  Json per = Json::array();
  for (int cells : {n0, 2 * n0}) {
    const Grid grid = ctx.probe_grid().with_cells(cells);
    const ExponentSystem sys = ctx.system_on(grid, which == Which::sharp ? 0.0 : ctx.config().alpha);
    const GridFunction b = ctx.symbol_on(grid);
    const MaximalConfig cfg = ctx.schedule(grid);
    const double alpha = sys.alpha();
    Operator op;
    switch (which) {
      case Which::maximal:
        op = [&](const GridFunction& f) { return maximal_commutator(b, f, alpha, cfg); };
        break;
      case Which::fractional:
        op = [&](const GridFunction& f) { return nonlinear_fractional_commutator(b, f, alpha, cfg); };
        break;
      case Which::sharp:
        op = [&](const GridFunction& f) { return nonlinear_sharp_commutator(b, f, cfg); };
        break;
    }
    const auto est = operator_norm_estimate(op, sys.r(), sys.q(), ctx.family(grid).members,
                                            ctx.config().tolerances);
    ratios.push_back(est.ratio);
    per.push_back({{"cells", cells}, {"ratio", est.ratio}, {"member", est.member}});
    if (r.schedule_flags.empty()) r.schedule_flags = schedule_flags(grid, cfg);
  }
  r.measured = ratio(std::abs(ratios[1] - ratios[0]), ratios[0]);
  r.bound = 0.1;
  r.witness = per;
  r.details = {{"ratios", values_json(ratios)},
               {"note", "relative change of the operator-norm estimate under N -> 2N"}};
}

}  // namespace

void ratio_stability_maximal_commutator(Context& ctx, CheckReport& r) {
  ratio_stability(ctx, r, Which::maximal);
}

void ratio_stability_fractional_commutator(Context& ctx, CheckReport& r) {
  ratio_stability(ctx, r, Which::fractional);
}

void ratio_stability_sharp_commutator(Context& ctx, CheckReport& r) {
  ratio_stability(ctx, r, Which::sharp);
}

void suite_self_audit(Context& ctx, CheckReport& r) {
  static const char* const anchors[] = {
      "Luxemburg-Nakano norm",
      "homogeneity",
      "power rule",
      "generalized Holder inequality",
      "Holder inequality",
      "conjugate exponent",
      "coupled exponent relations",
      "p(x) >= p_infty",
      "log-Holder",
      "fractional maximal function of a cube indicator",
      "sharp maximal function of a cube indicator",
      "potential operator",
      "variable Lipschitz spaces of pointwise and integral type",
      "mean bounded by twice the sharp maximal function",
      "mean value split",
      "split inequality on E",
      "indicator identity",
      "negative part",
      "maximal commutator theorem",
      "fractional commutator theorem",
      "sharp commutator theorem",
      "indicator norm duality",
      "fractional gain",
      "small cubes",
      "equivalence of pointwise and integral",
      "bounded mean oscillation",
      "oscillation bound",
      "blow-up",
      "operator norm ratio",
      "not sublinear",
  };
  // A filtered run audits the registry instead of the emitted subset.
  const bool full = ctx.emitted_locations().size() + 1 >= check_registry().size();
  std::vector<std::string> pool = ctx.emitted_locations();
  if (!full) {
    pool.clear();
    for (const auto& c : check_registry()) pool.emplace_back(c.location);
  }
  Json missing = Json::array();
  for (const char* a : anchors) {
    const bool found = std::any_of(pool.begin(), pool.end(),
                                   [&](const std::string& s) { return s.find(a) != std::string::npos; });
    if (!found) missing.push_back(a);
  }
  r.measured = static_cast<double>(missing.size());
  r.bound = 0.0;
  r.details = {{"anchors", std::size(anchors)},
               {"scope", full ? "emitted reports" : "registry"},
               {"missing", missing}};
}

}  // namespace varlip::harness::detail
