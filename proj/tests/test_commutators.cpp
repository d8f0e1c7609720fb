#include <cmath>
#include <random>

#include "doctest.h"
#include "varlip/commutators.hpp"
#include "varlip/error.hpp"
#include "varlip/lipschitz.hpp"
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

}  // namespace

TEST_CASE("maximal commutator agrees with the naive oracle") {
  for (const Grid& g : {Grid(1, {-1.0, 0.0}, 2.0, 32), Grid(2, {-1.0, -1.0}, 2.0, 16)}) {
    const auto b = random_function(g, 1);
    const auto f = random_function(g, 2);
    for (double alpha : {0.0, 0.4}) {
      const auto expected = reference::maximal_commutator(b, f, alpha);
      check_close(maximal_commutator(b, f, alpha), expected);
      check_close(maximal_commutator(b, f, alpha, {}, CommutatorKernel::level_split), expected,
                  1e-11);
    }
    const Cube q0 = Cube::make(g, {4, g.dim() == 1 ? 0 : 3}, 10);
    check_close(maximal_commutator(b, f, 0.2, {std::nullopt, q0}),
                reference::maximal_commutator(b, f, 0.2, {std::nullopt, q0}));
  }
}

TEST_CASE("commutator trivial cases") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 64);
  const auto f = random_function(g, 3);
  const auto c = GridFunction::constant(g, 1.7);
  CHECK(maximal_commutator(c, f, 0.3).max_abs() == 0.0);
  CHECK(maximal_commutator(random_function(g, 4), GridFunction::constant(g, 0.0), 0.3).max_abs() == 0.0);
  CHECK(nonlinear_fractional_commutator(c, f, 0.3).max_abs() < 1e-12);
  CHECK(nonlinear_sharp_commutator(c, f).max_abs() < 1e-12);
  CHECK(nonlinear_sharp_commutator(random_function(g, 5), GridFunction::constant(g, 0.0)).max_abs() == 0.0);
  // Negative constant: c M f - M(c f) = (c - |c|) M f.
  const auto neg = GridFunction::constant(g, -1.5);
  const auto got = nonlinear_fractional_commutator(neg, f, 0.3);
  const auto mf = fractional_maximal(f, 0.3);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(got[k] == doctest::Approx(-3.0 * mf[k]));
  CHECK_THROWS_AS(maximal_commutator(f, f, 1.0), Error);
}

TEST_CASE("alpha-zero specialisation is bit-identical") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 100);
  const auto b = random_function(g, 6);
  const auto f = random_function(g, 7);
  const auto z = specialize_alpha_zero(b, f);
  const auto m = maximal_commutator(b, f, 0.0);
  const auto nl = nonlinear_fractional_commutator(b, f, 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(z.maximal[k] == m[k]);
    CHECK(z.nonlinear[k] == nl[k]);
  }
}

TEST_CASE("maximal commutator invariants") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 120);
  const auto b = random_function(g, 8);
  const auto f = random_function(g, 9);
  const auto h = random_function(g, 10);
  const auto m = maximal_commutator(b, f, 0.2);
  const auto shifted = maximal_commutator(b.shifted(12.5), f, 0.2);
  const auto sum = maximal_commutator(b, f + h, 0.2);
  const auto mh = maximal_commutator(b, h, 0.2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(m[k] >= 0.0);
    CHECK(std::abs(shifted[k] - m[k]) <= 1e-12 * std::max(1.0, m[k]));
    CHECK(sum[k] <= m[k] + mh[k] + 1e-12);
  }
}

TEST_CASE("pointwise dominations in 1D") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 129);
  const double d0 = 0.5;
  const auto b = GridFunction::sample(g, [d0](const Point& x) { return std::pow(std::abs(x[0]), d0); });
  const auto delta = GridFunction::constant(g, d0);
  const double lip = pointwise_lipschitz_norm(b, delta).norm;
  for (std::uint64_t seed : {11u, 12u}) {
    const auto f = random_function(g, seed);
    for (double alpha : {0.0, 0.3}) {
      const auto lhs = maximal_commutator(b, f, alpha);
      const auto rhs = variable_fractional_maximal(f, delta.shifted(alpha));
      const auto nl = nonlinear_fractional_commutator(b, f, alpha);
      for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(lhs[k] <= lip * rhs[k] + 1e-9);
        CHECK(std::abs(nl[k]) <= lhs[k] + 1e-9);
      }
    }
    const auto sharp = nonlinear_sharp_commutator(b, f);
    const auto md = variable_fractional_maximal(f, delta);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(sharp[k]) <= 2.0 * lip * md[k] + 1e-9);
  }
}

TEST_CASE("indicator identity for the fractional commutator") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 64);
  const auto b = random_function(g, 13, 0.0);
  const Cube q = Cube::make(g, {10, 0}, 30);
  for (double alpha : {0.0, 0.5}) {
    const auto lhs = nonlinear_fractional_commutator(b, indicator(g, q), alpha);
    const auto mq = restricted_fractional_maximal(b, alpha, q).values;
    const double s = std::pow(q.measure, alpha);
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!q.contains(g, k)) continue;
      CHECK(std::abs(lhs[k] - s * (b[k] - mq[k] / s)) < 1e-10);
    }
  }
}

TEST_CASE("nonlinear commutator is not sublinear") {
  // b = 1 on the left half, 2 on the right. At x on the left a tall spike v
  // at x makes both [b,M](u + v)(x) and [b,M](v)(x) vanish, while u alone,
  // living on the right, gives [b,M]u(x) = -Mu(x) != 0. Take f = u + v, g = -v.
  const Grid g(1, {-1.0, 0.0}, 2.0, 16);
  const auto b = GridFunction::sample(g, [](const Point& x) { return x[0] < 0.0 ? 1.0 : 2.0; });
  std::vector<double> u(16, 0.0), v(16, 0.0);
  for (int k = 10; k < 14; ++k) u[k] = 1.0;
  const std::size_t x = 4;
  v[x] = 10.0;
  const GridFunction fu(g, u), fv(g, v);
  const auto f = fu + fv;
  const auto h = fv.scaled(-1.0);
  const auto a = nonlinear_fractional_commutator(b, f + h, 0.0);
  const auto c1 = nonlinear_fractional_commutator(b, f, 0.0);
  const auto c2 = nonlinear_fractional_commutator(b, h, 0.0);
  CHECK(c1[x] == 0.0);
  CHECK(c2[x] == 0.0);
  CHECK(std::abs(a[x]) > 0.1);
}
