#include <cmath>
#include <random>

#include "doctest.h"
#include "varlip/error.hpp"
#include "varlip/operators.hpp"
#include "varlip/reference.hpp"

using namespace varlip;

namespace {

GridFunction random_function(const Grid& g, std::uint64_t seed, double lo = -2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, 2.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return GridFunction(g, std::move(v));
}

void check_close(const GridFunction& a, const GridFunction& b, double tol = 1e-12) {
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(std::abs(a[k] - b[k]) <= tol * std::max(1.0, std::abs(b[k])));
  }
}

void check_identical(const GridFunction& a, const GridFunction& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}

const Grid kSmall1(1, {-1.0, 0.0}, 2.0, 32);
const Grid kSmall2(2, {-1.0, -1.0}, 2.0, 16);

}  // namespace

TEST_CASE("maximal operators agree with the naive oracle") {
  for (const Grid& g : {kSmall1, kSmall2}) {
    const auto f = random_function(g, 7);
    const int n = g.dim();
    check_close(hl_maximal(f), reference::fractional_maximal(f, GridFunction::constant(g, 0.0)));
    for (double a : {0.25, 0.5}) {
      const double alpha = a * n;
      check_close(fractional_maximal(f, alpha),
                  reference::fractional_maximal(f, GridFunction::constant(g, alpha)));
    }
    const auto delta = GridFunction::sample(g, [n](const Point& x) {
      return 0.3 * n * (1.0 + std::sin(3.0 * x[0] + x[1])) / 2.0;
    });
    check_close(variable_fractional_maximal(f, delta), reference::fractional_maximal(f, delta));
    check_close(sharp_maximal(f), reference::sharp_maximal(f));

    const Cube q0 = Cube::make(g, {3, g.dim() == 1 ? 0 : 2}, 9);
    const auto restricted = restricted_fractional_maximal(f, 0.7 * n, q0);
    check_close(restricted.values,
                reference::fractional_maximal(f, GridFunction::constant(g, 0.7 * n),
                                              {std::nullopt, q0}));
    const WidthSchedule some{1, 3, 4};
    check_close(fractional_maximal(f, 0.2, {some, {}}),
                reference::fractional_maximal(f, GridFunction::constant(g, 0.2), {some, {}}));
  }
}

TEST_CASE("potential agrees with the naive oracle") {
  for (const Grid& g : {kSmall1, kSmall2}) {
    const auto f = random_function(g, 8);
    const auto delta = GridFunction::sample(g, [&](const Point& x) {
      return g.dim() * (0.2 + 0.1 * std::cos(x[0]));
    });
    check_close(potential(f, delta), reference::potential(f, delta));
  }
}

TEST_CASE("maximal operator identities") {
  const Grid g(1, {-4.0, 0.0}, 8.0, 800);
  const Cube unit = Cube::make(g, {400, 0}, 100);  // [0, 1]
  const auto chi = indicator(g, unit);
  const auto m = hl_maximal(chi);
  for (std::size_t k = 400; k < 500; ++k) CHECK(m[k] == 1.0);
  // x = 2: best interval is [0, 2 + h/2].
  const std::size_t x2 = 600;
  CHECK(std::abs(m[x2] - 0.5) < g.spacing());
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(m[k] >= chi[k]);

  const auto f = random_function(g, 9);
  check_identical(fractional_maximal(f, 0.0), hl_maximal(f));
  check_identical(variable_fractional_maximal(f, GridFunction::constant(g, 0.0)), hl_maximal(f));
  check_identical(variable_fractional_maximal(f, GridFunction::constant(g, 0.4)),
                  fractional_maximal(f, 0.4));
  const auto mf = hl_maximal(f);
  const auto ms = sharp_maximal(f);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(mf[k] >= std::abs(f[k]));
    CHECK(ms[k] <= 2.0 * mf[k] * (1.0 + 1e-14));
  }
  CHECK_THROWS_AS(fractional_maximal(f, 1.0), Error);
  CHECK_THROWS_AS(fractional_maximal(f, -0.1), Error);
}

TEST_CASE("fractional maximal of indicators") {
  for (const Grid& g : {Grid(1, {-1.0, 0.0}, 2.0, 256), Grid(2, {-1.0, -1.0}, 2.0, 48)}) {
    const int n = g.dim();
    std::mt19937_64 rng(10);
    for (int t = 0; t < 20; ++t) {
      const int w = 1 + static_cast<int>(rng() % (g.cells_per_axis() / 2));
      const int sx = static_cast<int>(rng() % (g.cells_per_axis() - w + 1));
      const int sy = n == 1 ? 0 : static_cast<int>(rng() % (g.cells_per_axis() - w + 1));
      const Cube q = Cube::make(g, {sx, sy}, w);
      const auto chi = indicator(g, q);
      for (double a : {0.0, 0.25, 0.5}) {
        const auto m = fractional_maximal(chi, a * n);
        const double expected = std::pow(q.measure, a);
        for (std::size_t k = 0; k < g.size(); ++k) {
          if (q.contains(g, k)) CHECK(std::abs(m[k] - expected) <= 1e-12 * expected);
        }
      }
    }
  }
  const Grid g(1, {-1.0, 0.0}, 2.0, 100);
  const auto c = GridFunction::constant(g, 3.0);
  CHECK(fractional_maximal(c, 0.3)[50] == doctest::Approx(3.0 * std::pow(2.0, 0.3)).epsilon(1e-13));
}

TEST_CASE("sharp maximal of indicators") {
  const Grid g(1, {-1.5, 0.0}, 3.0, 600);
  const double h = g.spacing();
  const Cube q = Cube::make(g, {250, 0}, 100);
  const auto ms = sharp_maximal(indicator(g, q));
  for (std::size_t k = 250; k < 350; ++k) {
    CHECK(ms[k] >= 0.5 - 5.0 * h);
    CHECK(ms[k] <= 0.5 + 1e-12);
  }
  const auto zero = sharp_maximal(GridFunction::constant(g, 4.2));
  CHECK(zero.max_abs() < 1e-12);
}

TEST_CASE("restricted maximal") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 128);
  const Cube q0 = Cube::make(g, {30, 0}, 40);
  const auto chi = indicator(g, q0);
  const auto r0 = restricted_fractional_maximal(chi, 0.0, q0);
  const auto ra = restricted_fractional_maximal(chi, 0.6, q0);
  CHECK(r0.support == q0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (q0.contains(g, k)) {
      CHECK(r0.values[k] == 1.0);
      CHECK(ra.values[k] == doctest::Approx(std::pow(q0.measure, 0.6)).epsilon(1e-13));
    } else {
      CHECK(r0.values[k] == 0.0);
    }
  }
  const auto f = random_function(g, 12);
  const auto rf = restricted_fractional_maximal(f, 0.3, q0);
  const auto uf = fractional_maximal(f, 0.3);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(rf.values[k] <= uf[k]);
  // gamma may exceed n.
  CHECK_NOTHROW(restricted_fractional_maximal(f, 1.5, q0));
  CHECK_THROWS_AS(restricted_fractional_maximal(f, 0.3, Cube{{120, 0}, 20, 0.0}), Error);
}

TEST_CASE("potential") {
  const auto half = [](int n) { return Grid(1, {-1.0, 0.0}, 2.0, n); };
  const Grid g = half(2048);
  CHECK(potential(GridFunction::constant(g, 0.0), GridFunction::constant(g, 0.5)).max_abs() == 0.0);

  // x = 0 must be a cell centre: odd cell count, a = (k + 1/2) h.
  const Grid odd(1, {-1.0, 0.0}, 2.0, 2049);
  const double h = odd.spacing();
  const int k = 256;
  const double a = (k + 0.5) * h;
  const std::size_t mid = 1024;
  const auto chi = GridFunction::sample(odd, [a](const Point& x) { return std::abs(x[0]) < a; });
  const double got = potential(chi, GridFunction::constant(odd, 0.5))[mid];
  CHECK(std::abs(got - 4.0 * std::sqrt(a)) < 1e-3);

  const auto f = random_function(g, 13);
  const auto gg = random_function(g, 14);
  const auto delta = GridFunction::constant(g, 0.4);
  const auto lhs = potential(f.scaled(2.0) + gg.scaled(-3.0), delta);
  const auto rhs = potential(f, delta).scaled(2.0) + potential(gg, delta).scaled(-3.0);
  check_close(lhs, rhs, 1e-11);

  CHECK_THROWS_AS(potential(f, GridFunction::constant(g, 0.0)), Error);
  CHECK(resolve_potential_mode(1, PotentialMode::automatic) == PotentialMode::analytic_cell);
  CHECK(resolve_potential_mode(2, PotentialMode::automatic) == PotentialMode::exclude_diagonal);
  CHECK_THROWS_AS(resolve_potential_mode(2, PotentialMode::analytic_cell), Error);
}

TEST_CASE("variable maximal is dominated by the potential in 1D") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 256);
  const auto delta = GridFunction::sample(g, [](const Point& x) { return 0.2 + 0.3 * x[0] * x[0]; });
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = random_function(g, seed);
    const auto m = variable_fractional_maximal(f, delta);
    const auto i = potential(f.abs(), delta);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(m[k] <= i[k] * (1.0 + 1e-12));
  }
}

TEST_CASE("sublinearity, monotonicity and schedules") {
  for (const Grid& g : {Grid(1, {-1.0, 0.0}, 2.0, 200), Grid(2, {-1.0, -1.0}, 2.0, 24)}) {
    const auto f = random_function(g, 15);
    const auto h = random_function(g, 16);
    const auto delta = GridFunction::constant(g, 0.3);
    const auto sum = f + h;
    const auto check_sub = [&](auto op) {
      const auto a = op(sum), b = op(f), c = op(h);
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(a[k] <= b[k] + c[k] + 1e-12);
      const auto s = op(f.scaled(-2.5));
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(s[k] - 2.5 * b[k]) <= 1e-12 * s[k] + 1e-12);
    };
    check_sub([](const GridFunction& x) { return hl_maximal(x); });
    check_sub([](const GridFunction& x) { return fractional_maximal(x, 0.4); });
    check_sub([&](const GridFunction& x) { return variable_fractional_maximal(x, delta); });

    const auto small = f.abs().scaled(0.5);
    const auto ms = hl_maximal(small), mb = hl_maximal(f);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(ms[k] <= mb[k]);

    const auto coarse = fractional_maximal(f, 0.2, {geometric_schedule(g.cells_per_axis()), {}});
    const auto fine = fractional_maximal(f, 0.2);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(coarse[k] <= fine[k]);
  }
}

TEST_CASE("schedule flags") {
  const Grid big(2, {0.0, 0.0}, 1.0, 128);
  CHECK(resolve_region(big, {}).approximate);
  CHECK(schedule_flags(big, {}).front() == "schedule:partial(approximate-sup)");
  const Grid line(1, {0.0, 0.0}, 1.0, 128);
  CHECK_FALSE(resolve_region(line, {}).approximate);
  CHECK(schedule_flags(line, {}).front() == "schedule:full");
}
