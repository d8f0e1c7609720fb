#include <cmath>
#include <random>

#include "doctest.h"
#include "varlip/error.hpp"
#include "varlip/norms.hpp"

using namespace varlip;

namespace {

Grid line(int n) { return Grid(1, {-1.0, 0.0}, 2.0, n); }

GridFunction random_function(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return GridFunction(g, std::move(v));
}

// Closed form for constant p: (sum |f|^p h)^{1/p}.
double lp_norm(const GridFunction& f, double p) {
  long double s = 0.0L;
  for (double v : f.values()) s += std::pow(static_cast<long double>(std::abs(v)), p);
  return static_cast<double>(std::pow(s * f.grid().cell_volume(), 1.0L / p));
}

}  // namespace

TEST_CASE("modular") {
  const Grid g = line(50);
  const auto one = GridFunction::constant(g, 1.0);
  const auto p2 = VariableExponent::constant(g, 2.0);
  CHECK(modular(one, p2, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(modular(one, p2, std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(modular(GridFunction::constant(g, 0.0), p2, 1.0) == 0.0);
  CHECK_THROWS_AS(modular(one, p2, 0.0), Error);
  CHECK_THROWS_AS(modular(one, p2, -1.0), Error);
  CHECK(std::isinf(modular(GridFunction::constant(g, 1e40), p2, 1.0)));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pinf(1.2, 5.0), c(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_function(g, rng);
    const auto p = builtin_exponent(g, "log_decay", {{"p_infty", pinf(rng)}, {"c", c(rng)}});
    double prev = INFINITY;
    for (int k = -6; k <= 6; ++k) {
      const double m = modular(f, p, std::ldexp(1.0, k));
      CHECK(m < prev);
      prev = m;
    }
  }
}

TEST_CASE("luxemburg norm closed forms") {
  const Grid g = line(400);
  const auto p2 = VariableExponent::constant(g, 2.0);
  const auto chi = GridFunction::sample(g, [](const Point& x) { return x[0] >= 0.0 && x[0] < 0.5; });
  CHECK(std::abs(luxemburg_norm(chi, p2).value - std::sqrt(0.5)) < 1e-8);
  const auto zero = luxemburg_norm(GridFunction::constant(g, 0.0), p2);
  CHECK(zero.value == 0.0);
  CHECK(zero.iterations == 0);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pu(1.1, 6.0);
  for (int t = 0; t < 200; ++t) {
    const auto f = random_function(g, rng);
    const double p = pu(rng);
    const double got = luxemburg_norm(f, VariableExponent::constant(g, p)).value;
    CHECK(std::abs(got / lp_norm(f, p) - 1.0) < 1e-8);
  }
}

TEST_CASE("luxemburg norm against a tighter-tolerance run") {
  const Grid g = line(512);
  const auto p = builtin_exponent(g, "log_decay", {{"p_infty", 2.0}, {"c", 1.0}});
  const auto f = GridFunction::sample(g, [](const Point& x) { return std::exp(-8.0 * x[0] * x[0]); });
  const auto base = luxemburg_norm(f, p);
  const auto tight = luxemburg_norm(f, p, NormTolerances{1e-11, 1e-13, 1000});
  CHECK(std::abs(base.value - tight.value) < 1e-8);
  CHECK(std::abs(base.modular_at_value - 1.0) <= 1e-10);
  CHECK(std::abs(modular(f, p, base.value) - 1.0) < 1e-10);
}

TEST_CASE("luxemburg algebra") {
  const Grid g = line(256);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pinf(1.3, 4.0), c(0.0, 1.5), scale(-5.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    const auto f = random_function(g, rng);
    const auto p = builtin_exponent(g, "log_decay", {{"p_infty", pinf(rng)}, {"c", c(rng)}});
    const double a = scale(rng);
    const double nf = luxemburg_norm(f, p).value;
    CHECK(std::abs(luxemburg_norm(f.scaled(a), p).value / (std::abs(a) * nf) - 1.0) < 1e-8);
    CHECK(std::abs(modular(f, p, nf) - 1.0) < 1e-10);
    for (double s : {0.5, 2.0, 3.0}) {
      if (!(s * p.p_minus() > 1.0)) continue;
      const auto fs = f.map([s](double v) { return std::pow(std::abs(v), s); });
      const double lhs = luxemburg_norm(fs, p).value;
      const double rhs = std::pow(luxemburg_norm(f, p.scaled(s)).value, s);
      CHECK(std::abs(lhs / rhs - 1.0) < 1e-7);
    }
  }
}

TEST_CASE("indicator norm matches the general norm") {
  const Grid g = line(200);
  const auto p = builtin_exponent(g, "smooth_bump", {{"p_infty", 2.0}, {"a", 2.0}, {"s", 0.3}});
  for (int w : {1, 7, 50, 200}) {
    const Cube q = Cube::make(g, {200 - w, 0}, w);
    const double direct = indicator_norm(q, p).value;
    CHECK(std::abs(direct - luxemburg_norm(indicator(g, q), p).value) < 1e-10);
  }
  const auto p3 = VariableExponent::constant(g, 3.0);
  const Cube q = Cube::make(g, {10, 0}, 30);
  CHECK(indicator_norm(q, p3).value == doctest::Approx(std::cbrt(q.measure)).epsilon(1e-13));
}

TEST_CASE("holder pairing") {
  const Grid g = line(128);
  const auto p2 = VariableExponent::constant(g, 2.0);
  const Cube q = Cube::make(g, {20, 0}, 30);
  const auto chi = indicator(g, q);
  const auto eq = holder_pairing(chi, chi, p2);
  CHECK(eq.lhs == doctest::Approx(q.measure).epsilon(1e-13));
  CHECK(eq.rhs == doctest::Approx(q.measure).epsilon(1e-10));
  const auto z = holder_pairing(GridFunction::constant(g, 0.0), chi, p2);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs >= 0.0);

  CHECK(holder_constant(p2) == 1.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pinf(1.2, 5.0), c(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const auto p = builtin_exponent(g, "log_decay", {{"p_infty", pinf(rng)}, {"c", c(rng)}});
    const double k = holder_constant(p);
    CHECK(k >= 1.0);
    CHECK(k <= 2.0);
    const auto hp = holder_pairing(random_function(g, rng), random_function(g, rng), p);
    CHECK(hp.lhs <= k * hp.rhs);
  }
}
