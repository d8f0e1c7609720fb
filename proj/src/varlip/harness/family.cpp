#include "varlip/harness/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "varlip/error.hpp"

namespace varlip::harness {

namespace {

using Rel = std::array<double, 2>;

Rel relative(const Grid& grid, const Point& x) {
  Rel u{(x[0] - grid.lower(0)) / grid.side(), 0.0};
  if (grid.dim() == 2) u[1] = (x[1] - grid.lower(1)) / grid.side();
  return u;
}

Rel random_point(Rng& rng, int dim, double lo, double hi) {
  Rel c{rng.uniform(lo, hi), 0.0};
  if (dim == 2) c[1] = rng.uniform(lo, hi);
  return c;
}

double dist(const Rel& a, const Rel& b, int dim) {
  return distance(Point{a[0], a[1]}, Point{b[0], b[1]}, dim);
}

double sup_dist(const Rel& a, const Rel& b, int dim) {
  double d = std::abs(a[0] - b[0]);
  if (dim == 2) d = std::max(d, std::abs(a[1] - b[1]));
  return d;
}

GridFunction relative_sample(const Grid& grid, const std::function<double(const Rel&)>& fn) {
  return GridFunction::sample(grid, [&](const Point& x) { return fn(relative(grid, x)); });
}

double param_or(const ParamMap& params, std::string_view name, double fallback) {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const ParamMap& params, std::string_view family,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : params) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(ErrorCode::argument,
           "unknown parameter '" + key + "' for " + std::string(family) + " symbol");
    }
  }
}

}  // namespace

TestFamily make_test_family(const Grid& grid, std::uint64_t seed, int count) {
  if (count < 1) fail(ErrorCode::argument, "test family needs at least one member");
  const int dim = grid.dim();
  Rng rng(seed);
  TestFamily fam;
  fam.seed = seed;
  for (int m = 0; m < count; ++m) {
    GridFunction f = GridFunction::constant(grid, 0.0);
    std::string label;
    switch (m % 4) {
      case 0: {
        const Rel c = random_point(rng, dim, 0.3, 0.7);
        const double rho = rng.uniform(0.1, 0.25);
        f = relative_sample(grid, [&](const Rel& u) { return sup_dist(u, c, dim) < rho ? 1.0 : 0.0; });
        label = "cube_indicator";
        break;
      }
      case 1: {
        const Rel c = random_point(rng, dim, 0.2, 0.8);
        const double s = rng.uniform(0.05, 0.2);
        const double a = rng.uniform(0.5, 2.0) * (rng.unit() < 0.5 ? -1.0 : 1.0);
        f = relative_sample(grid, [&](const Rel& u) {
          const double d = dist(u, c, dim);
          return a * std::exp(-d * d / (2.0 * s * s));
        });
        label = "gaussian";
        break;
      }
      case 2: {
        const int blocks = 8;
        std::vector<double> level(dim == 1 ? blocks : blocks * blocks);
        for (double& v : level) v = rng.uniform(-1.0, 1.0);
        f = relative_sample(grid, [&](const Rel& u) {
          const int i = std::clamp(static_cast<int>(u[0] * blocks), 0, blocks - 1);
          const int j = dim == 1 ? 0 : std::clamp(static_cast<int>(u[1] * blocks), 0, blocks - 1);
          return level[static_cast<std::size_t>(j * blocks + i)];
        });
        label = "piecewise_constant";
        break;
      }
      default: {
        const Rel c = random_point(rng, dim, 0.3, 0.7);
        const double gamma = rng.uniform(0.5, 2.0);
        const double rho = rng.uniform(0.15, 0.3);
        f = relative_sample(grid, [&](const Rel& u) {
          const double d = dist(u, c, dim);
          return d < rho ? std::pow(d, gamma) : 0.0;
        });
        label = "power_bump";
      }
    }
    if (f.is_zero()) {
      fail(ErrorCode::insufficient_data, "test family member " + std::to_string(m) +
                                             " vanishes on a " +
                                             std::to_string(grid.cells_per_axis()) + "-cell grid");
    }
    fam.members.push_back(std::move(f));
    fam.labels.push_back(label);
  }
  return fam;
}

std::vector<Symbol> symbol_corpus(const Grid& grid, std::uint64_t seed, int count) {
  const int dim = grid.dim();
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Symbol> out;
  for (int m = 0; m < count; ++m) {
    GridFunction b = GridFunction::constant(grid, 0.0);
    std::string label;
    switch (m % 5) {
      case 0: {
        const double a = rng.uniform(0.5, 2.0);
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const Rel w{std::cos(theta), std::sin(theta)};
        b = relative_sample(grid, [&](const Rel& u) {
          return a * (dim == 1 ? u[0] : w[0] * u[0] + w[1] * u[1]);
        });
        label = "linear";
        break;
      }
      case 1: {
        const Rel c = random_point(rng, dim, 0.2, 0.8);
        const double d0 = rng.uniform(0.2, 1.0);
        b = relative_sample(grid, [&](const Rel& u) { return std::pow(dist(u, c, dim), d0); });
        label = "power";
        break;
      }
      case 2: {
        const Rel c = random_point(rng, dim, 0.2, 0.8);
        const double s = rng.uniform(0.1, 0.3);
        const double a = rng.uniform(0.5, 2.0);
        b = relative_sample(grid, [&](const Rel& u) {
          const double d = dist(u, c, dim);
          return a * std::exp(-d * d / (2.0 * s * s));
        });
        label = "gaussian";
        break;
      }
      case 3: {
        struct Mode {
          double amp, wx, wy, phase;
        };
        std::vector<Mode> modes;
        for (int k = 1; k <= 6; ++k) {
          const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
          modes.push_back({rng.uniform(-1.0, 1.0) / (k * k), k * std::cos(theta),
                           k * std::sin(theta), rng.uniform(0.0, 2.0 * std::numbers::pi)});
        }
        b = relative_sample(grid, [&](const Rel& u) {
          double s = 0.0;
          for (const auto& md : modes) {
            const double arg = dim == 1 ? (std::abs(md.wx) + std::abs(md.wy)) * u[0]
                                        : md.wx * u[0] + md.wy * u[1];
            s += md.amp * std::cos(2.0 * std::numbers::pi * arg + md.phase);
          }
          return s;
        });
        label = "random_smooth";
        break;
      }
      default: {
        const double t = rng.uniform(0.3, 0.7);
        const double a = rng.uniform(0.5, 2.0);
        b = relative_sample(grid, [&](const Rel& u) { return u[0] > t ? a : 0.0; });
        label = "step";
      }
    }
    b = b.shifted(-b.min());
    if (b.max() == 0.0) {
      fail(ErrorCode::insufficient_data, "symbol corpus member " + std::to_string(m) +
                                             " is constant on this grid");
    }
    out.push_back({label, std::move(b)});
  }
  return out;
}

GridFunction builtin_symbol(const Grid& grid, std::string_view family, const ParamMap& params) {
  const int dim = grid.dim();
  if (family == "constant") {
    reject_unknown(params, family, {"c"});
    return GridFunction::constant(grid, param_or(params, "c", 1.0));
  }
  if (family == "linear") {
    reject_unknown(params, family, {"slope"});
    const double slope = param_or(params, "slope", 1.0);
    return GridFunction::sample(grid, [&](const Point& x) { return slope * (x[0] - grid.lower(0)); });
  }
  if (family == "power") {
    reject_unknown(params, family, {"x0", "y0", "delta0", "scale"});
    const Point c{param_or(params, "x0", 0.0), param_or(params, "y0", 0.0)};
    const double d0 = param_or(params, "delta0", 0.5);
    const double scale = param_or(params, "scale", 1.0);
    if (!(d0 > 0.0 && d0 <= 1.0)) fail(ErrorCode::argument, "power symbol needs delta0 in (0, 1]");
    return GridFunction::sample(grid, [&](const Point& x) {
      return scale * std::pow(distance(x, c, dim), d0);
    });
  }
  if (family == "gaussian") {
    reject_unknown(params, family, {"x0", "y0", "width", "amplitude"});
    const Point c{param_or(params, "x0", 0.0), param_or(params, "y0", 0.0)};
    const double s = param_or(params, "width", 0.3);
    const double a = param_or(params, "amplitude", 1.0);
    if (!(s > 0.0)) fail(ErrorCode::argument, "gaussian symbol needs width > 0");
    return GridFunction::sample(grid, [&](const Point& x) {
      const double d = distance(x, c, dim);
      return a * std::exp(-d * d / (2.0 * s * s));
    });
  }
  if (family == "step") {
    reject_unknown(params, family, {"x0", "height"});
    const double x0 = param_or(params, "x0", 0.0);
    const double height = param_or(params, "height", 1.0);
    return GridFunction::sample(grid, [&](const Point& x) { return x[0] > x0 ? height : 0.0; });
  }
  fail(ErrorCode::argument, "unknown symbol family '" + std::string(family) +
                                "' (expected constant, linear, power, gaussian or step)");
}

GridFunction random_function(const Grid& grid, Rng& rng) {
  const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
  const double zero_fraction = rng.uniform(0.0, 0.3);
  std::vector<double> v(grid.size());
  for (double& x : v) x = rng.unit() < zero_fraction ? 0.0 : scale * rng.uniform(-1.0, 1.0);
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = scale;
  return GridFunction(grid, std::move(v));
}

}  // namespace varlip::harness
