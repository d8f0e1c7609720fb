#include "varlip/harness/checks.hpp"

#include <algorithm>
#include <cmath>

#include "varlip/error.hpp"
#include "varlip/harness/checks_impl.hpp"

namespace varlip::harness {

namespace detail {

Json cell_witness(const Grid& grid, std::size_t cell) {
  const Point c = grid.center(cell);
  Json j;
  j["cell"] = cell;
  j["point"] = grid.dim() == 1 ? Json::array({c[0]}) : Json::array({c[0], c[1]});
  return j;
}

Json cube_witness(const Grid& grid, const Cube& q) {
  Json j;
  j["start"] = grid.dim() == 1 ? Json::array({q.start[0]}) : Json::array({q.start[0], q.start[1]});
  j["width"] = q.width;
  j["measure"] = q.measure;
  return j;
}

Json pair_witness(const Grid& grid, std::size_t x, std::size_t y) {
  Json j;
  j["x"] = cell_witness(grid, x);
  j["y"] = cell_witness(grid, y);
  return j;
}

Json values_json(std::span<const double> v) {
  Json j = Json::array();
  for (double x : v) j.push_back(x);
  return j;
}

WidthSchedule active_widths(Context& ctx, const Grid& grid) {
  return resolve_region(grid, ctx.schedule(grid)).widths;
}

std::vector<Cube> middle_third_cubes(const Grid& grid, Rng& rng, int count,
                                     const WidthSchedule& widths) {
  const int n = grid.cells_per_axis();
  const int lo = n / 3;
  const int hi = n - n / 3;  // exclusive
  WidthSchedule fit;
  for (int w : widths) {
    if (w <= hi - lo) fit.push_back(w);
  }
  if (fit.empty()) fail(ErrorCode::insufficient_data, "no scheduled width fits the middle third");
  std::vector<Cube> out;
  for (int k = 0; k < count; ++k) {
    const int w = fit[static_cast<std::size_t>(rng.integer(0, static_cast<int>(fit.size()) - 1))];
    std::array<int, 2> start{rng.integer(lo, hi - w), 0};
    if (grid.dim() == 2) start[1] = rng.integer(lo, hi - w);
    out.push_back(Cube::make(grid, start, w));
  }
  return out;
}

std::vector<Cube> random_cubes(const Grid& grid, Rng& rng, int count, const WidthSchedule& widths) {
  const int n = grid.cells_per_axis();
  std::vector<Cube> out;
  for (int k = 0; k < count; ++k) {
    const int w = widths[static_cast<std::size_t>(rng.integer(0, static_cast<int>(widths.size()) - 1))];
    std::array<int, 2> start{rng.integer(0, n - w), 0};
    if (grid.dim() == 2) start[1] = rng.integer(0, n - w);
    out.push_back(Cube::make(grid, start, w));
  }
  return out;
}

std::vector<std::size_t> cube_cells(const Grid& grid, const Cube& q) {
  std::vector<std::size_t> out;
  const int rows = grid.dim() == 1 ? 1 : q.width;
  for (int dy = 0; dy < rows; ++dy) {
    for (int dx = 0; dx < q.width; ++dx) {
      out.push_back(grid.flat(q.start[0] + dx, grid.dim() == 1 ? 0 : q.start[1] + dy));
    }
  }
  return out;
}

GridFunction random_piecewise_constant(const Grid& grid, Rng& rng) {
  const int blocks = rng.integer(2, 16);
  const int dim = grid.dim();
  std::vector<double> level(static_cast<std::size_t>(dim == 1 ? blocks : blocks * blocks));
  for (double& v : level) v = rng.uniform(-1.0, 1.0);
  return GridFunction::sample(grid, [&](const Point& x) {
    const auto axis = [&](int a) {
      const double u = (x[a] - grid.lower(a)) / grid.side();
      return std::clamp(static_cast<int>(u * blocks), 0, blocks - 1);
    };
    const int j = dim == 1 ? 0 : axis(1);
    return level[static_cast<std::size_t>(j * blocks + axis(0))];
  });
}

VariableExponent random_log_decay(const Grid& grid, Rng& rng, double p_lo, double p_hi) {
  const double inf = rng.uniform(p_lo, p_hi);
  const double c = rng.uniform(0.0, 2.0);
  return builtin_exponent(grid, "log_decay", {{"p_infty", inf}, {"c", c}});
}

}  // namespace detail

const std::vector<CheckSpec>& check_registry() {
  using namespace detail;
  static const std::vector<CheckSpec> registry = {
      {"norm_constant_exponent", "Luxemburg-Nakano norm: constant-exponent closed form",
       norm_constant_exponent},
      {"norm_homogeneity", "variable Lebesgue space properties: homogeneity of the norm",
       norm_homogeneity},
      {"norm_power_rule", "variable Lebesgue space properties: power rule", norm_power_rule},
      {"norm_unit_modular", "Luxemburg-Nakano norm: modular equals one at the norm",
       norm_unit_modular},
      {"norm_product_rule", "variable Lebesgue space properties: generalized Holder inequality",
       norm_product_rule},
      {"holder_variable", "variable Lebesgue space properties: Holder inequality", holder_variable},
      {"holder_constant", "variable Lebesgue space properties: Holder inequality, constant exponent",
       holder_constant},
      {"exponent_conjugacy", "conjugate exponent", exponent_conjugacy},
      {"exponent_system_closure", "commutator theorems: coupled exponent relations",
       exponent_system_closure},
      {"exponent_decay_hypothesis", "commutator theorems: hypothesis p(x) >= p_infty",
       exponent_decay_hypothesis},
      {"log_holder_family", "log-Holder continuity of the exponent", log_holder_family},
      {"indicator_fractional_maximal", "fractional maximal function of a cube indicator",
       indicator_fractional_maximal},
      {"indicator_sharp_maximal", "sharp maximal function of a cube indicator",
       indicator_sharp_maximal},
      {"domination_potential",
       "pointwise estimate of the variable fractional maximal function by the potential operator",
       domination_potential},
      {"potential_ratio", "boundedness of the potential operator, measured ratio", potential_ratio},
      {"oracle_operators", "maximal operators, potential and commutators: definitions",
       oracle_operators},
      {"oracle_lipschitz", "variable Lipschitz spaces of pointwise and integral type: definitions",
       oracle_lipschitz},
      {"converse_mean_bound",
       "sharp commutator converse: mean bounded by twice the sharp maximal function",
       converse_mean_bound},
      {"converse_mean_split", "sharp commutator converse: mean value split", converse_mean_split},
      {"converse_split_inequality", "sharp commutator converse: split inequality on E",
       converse_split_inequality},
      {"converse_fractional_split_inequality",
       "fractional commutator converse: split inequality on E",
       converse_fractional_split_inequality},
      {"commutator_indicator_identity", "fractional commutator converse: indicator identity",
       commutator_indicator_identity},
      {"negative_part_probe", "sharp commutator converse: negative part estimate",
       negative_part_probe},
      {"domination_maximal_commutator", "maximal commutator theorem: pointwise domination",
       domination_maximal_commutator},
      {"domination_nonlinear_fractional", "fractional commutator theorem: pointwise domination",
       domination_nonlinear_fractional},
      {"domination_sharp_commutator", "sharp commutator theorem: pointwise domination",
       domination_sharp_commutator},
      {"lemma_indicator_duality", "indicator norm duality for log-Holder exponents",
       lemma_indicator_duality},
      {"lemma_indicator_duality_constant",
       "indicator norm duality for log-Holder exponents, constant exponent",
       lemma_indicator_duality_constant},
      {"lemma_indicator_fractional_duality", "indicator norm duality with fractional gain",
       lemma_indicator_fractional_duality},
      {"lemma_indicator_fractional_duality_constant",
       "indicator norm duality with fractional gain, constant exponent",
       lemma_indicator_fractional_duality_constant},
      {"lemma_small_cube_norm", "indicator norm of small cubes", lemma_small_cube_norm},
      {"lipschitz_equivalence",
       "equivalence of pointwise and integral variable Lipschitz spaces", lipschitz_equivalence},
      {"lipschitz_bmo_reduction",
       "integral variable Lipschitz space reduces to bounded mean oscillation",
       lipschitz_bmo_reduction},
      {"oscillation_bound", "equivalence proof: oscillation bound", oscillation_bound},
      {"oscillation_sampling_regression",
       "equivalence proof: oscillation bound, subsampled against exact norm",
       oscillation_sampling_regression},
      {"blowup_step", "converse directions: blow-up of the normalized oscillation, step symbol",
       blowup_step},
      {"blowup_smooth", "converse directions: blow-up of the normalized oscillation, smooth symbol",
       blowup_smooth},
      {"forward_sharp_commutator", "sharp commutator theorem: boundedness",
       forward_sharp_commutator},
      {"forward_maximal_commutator", "maximal commutator theorem: boundedness",
       forward_maximal_commutator},
      {"forward_fractional_commutator", "fractional commutator theorem: boundedness",
       forward_fractional_commutator},
      {"ratio_stability_maximal_commutator", "maximal commutator theorem: operator norm ratio",
       ratio_stability_maximal_commutator},
      {"ratio_stability_fractional_commutator",
       "fractional commutator theorem: operator norm ratio",
       ratio_stability_fractional_commutator},
      {"ratio_stability_sharp_commutator", "sharp commutator theorem: operator norm ratio",
       ratio_stability_sharp_commutator},
      {"nonsublinearity_witness", "nonlinear commutator is not sublinear",
       nonsublinearity_witness},
      {"suite_self_audit", "suite completeness", suite_self_audit},
  };
  return registry;
}

std::vector<std::string> check_ids() {
  std::vector<std::string> out;
  for (const auto& c : check_registry()) out.emplace_back(c.id);
  return out;
}

RatioEstimate operator_norm_estimate(const Operator& op, const VariableExponent& r,
                                     const VariableExponent& q,
                                     const std::vector<GridFunction>& family,
                                     const NormTolerances& tol) {
  if (family.empty()) fail(ErrorCode::argument, "operator norm estimate needs a non-empty family");
  RatioEstimate out;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const double den = luxemburg_norm(family[k], r, tol).value;
    if (den == 0.0) fail(ErrorCode::argument, "test family member " + std::to_string(k) + " is zero");
    const double v = luxemburg_norm(op(family[k]), q, tol).value / den;
    out.per_member.push_back(v);
    if (v > out.ratio || k == 0) {
      out.ratio = v;
      out.member = k;
    }
  }
  return out;
}

void validate_hypotheses(Theorem which, const ExponentSystem& sys, const GridFunction& b) {
  const int n = sys.dim();
  const double alpha = sys.alpha();
  const auto clause = [](const std::string& what) {
    fail(ErrorCode::hypothesis, "hypothesis violated: " + what);
  };
  const GridFunction& delta = sys.delta();
  if (!(delta.min() > 0.0)) clause("delta_minus > 0 (delta_minus = " + format_double(delta.min()) + ")");
  if (which == Theorem::sharp_commutator && alpha != 0.0) {
    clause("the sharp commutator theorem takes alpha = 0");
  }
  const VariableExponent& r = sys.r();
  double r_order = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) r_order = std::max(r_order, r[k] * (alpha + delta[k]));
  if (!(r_order < n)) {
    clause("(r(alpha + delta))_+ < n, got " + format_double(r_order));
  }
  if (!r.p_infty()) clause("r_infty must be declared");
  const double r_inf_order = *r.p_infty() * (alpha + delta.max());
  if (!(r_inf_order < n)) {
    clause("r_infty (alpha + delta)_+ < n, got " + format_double(r_inf_order));
  }
  if (which != Theorem::maximal_commutator) {
    const double s = 1.0 / sys.beta() + 1.0 / sys.p_conj().p_plus();
    if (!(s > 1.0)) clause("1/beta + 1/(p')_+ > 1, got " + format_double(s));
    if (b.min() < 0.0) clause("b >= 0, got min b = " + format_double(b.min()));
  }
  if (!(sys.relation_residual() <= 1e-12)) clause("delta/n = 1/beta - 1/p = 1/r - alpha/n - 1/q");
}

BlowupResult blowup_probe(const GridFunction& b, const ExponentSystem& sys, const Point& x0,
                          const NormTolerances& tol) {
  const Grid& grid = b.grid();
  if (!(sys.grid() == grid)) fail(ErrorCode::argument, "symbol and system grids differ");
  const int n = grid.cells_per_axis();
  const int dim = grid.dim();
  BlowupResult out;
  for (int a = 0; a < dim; ++a) {
    const double v = std::round((x0[a] - grid.lower(a)) / grid.spacing());
    out.vertex[a] = std::clamp(static_cast<int>(v), 1, n - 1);
  }
  double d0 = 0.0;
  int count = 0;
  for (int dy = dim == 1 ? 0 : -1; dy <= 0; ++dy) {
    for (int dx = -1; dx <= 0; ++dx) {
      d0 += sys.delta()[grid.flat(out.vertex[0] + dx, dim == 1 ? 0 : out.vertex[1] + dy)];
      ++count;
    }
  }
  out.predicted = -(d0 / count) / dim;

  const VariableExponent p_conj = sys.p_conj();
  const CubeAverager averager(b);
  for (int w = 2; w <= n; w *= 2) {
    std::array<int, 2> start{out.vertex[0] - w / 2, dim == 1 ? 0 : out.vertex[1] - w / 2};
    bool fits = true;
    for (int a = 0; a < dim; ++a) fits = fits && start[a] >= 0 && start[a] + w <= n;
    if (!fits) break;
    const Cube q = Cube::make(grid, start, w);
    const double mean = averager.average(q);
    double osc = 0.0;
    for (std::size_t c : detail::cube_cells(grid, q)) osc += std::abs(b[c] - mean);
    osc *= grid.cell_volume();
    const double den = std::pow(q.measure, 1.0 / sys.beta()) * indicator_norm(q, p_conj, tol).value;
    out.widths.push_back(w);
    out.measures.push_back(q.measure);
    out.ratios.push_back(osc / den);
  }
  if (out.widths.size() < 6) {
    fail(ErrorCode::insufficient_data,
         "blow-up probe: only " + std::to_string(out.widths.size()) +
             " nested dyadic cubes fit; at least 4 are needed after dropping the two smallest");
  }
  out.degenerate = std::all_of(out.ratios.begin(), out.ratios.end(), [](double r) { return r == 0.0; });
  if (out.degenerate) return out;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 2; k < out.ratios.size(); ++k) {
    if (!(out.ratios[k] > 0.0)) continue;
    const double x = std::log(out.measures[k]);
    const double y = std::log(out.ratios[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++out.fitted;
  }
  if (out.fitted < 4) {
    fail(ErrorCode::insufficient_data, "blow-up probe: fewer than 4 nonzero ratios to fit");
  }
  const double m = static_cast<double>(out.fitted);
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

}  // namespace varlip::harness
