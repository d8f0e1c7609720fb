#include <cmath>
#include <random>

#include "doctest.h"
#include "varlip/lipschitz.hpp"
#include "varlip/reference.hpp"

using namespace varlip;

namespace {

GridFunction random_function(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return GridFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("pointwise norm closed forms") {
  const Grid unit(1, {0.0, 0.0}, 1.0, 400);
  const auto half = GridFunction::constant(unit, 0.5);
  CHECK(pointwise_lipschitz_norm(GridFunction::constant(unit, 3.0), half).norm == 0.0);
  const auto x = GridFunction::sample(unit, [](const Point& p) { return p[0]; });
  CHECK(std::abs(pointwise_lipschitz_norm(x, half).norm - 1.0) < unit.spacing());

  const Grid sym(1, {-1.0, 0.0}, 2.0, 1025);
  const auto root = GridFunction::sample(sym, [](const Point& p) { return std::sqrt(std::abs(p[0])); });
  const auto r = pointwise_lipschitz_norm(root, GridFunction::constant(sym, 0.5));
  CHECK(std::abs(r.norm - 1.0) < 1e-6);
  CHECK_FALSE(r.approximate);
}

TEST_CASE("pointwise norm is asymmetric in delta") {
  const Grid g(1, {0.0, 0.0}, 1.0, 4);
  const GridFunction b(g, {0.0, 1.0, 1.0, 1.0});
  const GridFunction delta(g, {0.1, 0.9, 0.9, 0.9});
  const auto r = pointwise_lipschitz_norm(b, delta);
  CHECK(r.norm == doctest::Approx(reference::pointwise_lipschitz_norm(b, delta)).epsilon(1e-14));
  CHECK(r.witness[0] == 1);
  CHECK(r.witness[1] == 0);
}

TEST_CASE("Lipschitz norms agree with the naive oracle") {
  for (const Grid& g : {Grid(1, {-1.0, 0.0}, 2.0, 32), Grid(2, {-1.0, -1.0}, 2.0, 16)}) {
    const auto b = random_function(g, 21);
    const auto p = builtin_exponent(g, "log_decay", {{"p_infty", 3.0}, {"c", 0.8}});
    const auto sys = ExponentSystem::make(p, 1.8, 0.0, VariableExponent::constant(g, 2.0));
    const double pw = pointwise_lipschitz_norm(b, sys.delta()).norm;
    CHECK(std::abs(pw - reference::pointwise_lipschitz_norm(b, sys.delta())) <= 1e-12 * pw);
    const NormTolerances tight{0.0, 1e-15, 400};
    const double in = integral_lipschitz_norm(b, sys, std::nullopt, tight).norm;
    const double ref = reference::integral_lipschitz_norm(b, 1.8, p, {}, tight);
    CHECK(std::abs(in - ref) <= 1e-12 * ref);
  }
}

TEST_CASE("integral norm reduces to BMO for beta = p constant") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 48);
  const auto b = random_function(g, 22);
  const auto p = VariableExponent::constant(g, 2.5);
  const double got = integral_lipschitz_norm(b, 2.5, p).norm;
  const double bmo = reference::bmo_norm(b);
  CHECK(std::abs(got - bmo) <= 1e-10 * bmo);
}

TEST_CASE("integral norm is bounded by the pointwise norm") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 129);
  const auto b = GridFunction::sample(g, [](const Point& p) { return std::sqrt(std::abs(p[0])); });
  // beta and p chosen so delta = 0.5 everywhere.
  const auto p = VariableExponent::constant(g, 4.0);
  const auto sys = ExponentSystem::make(p, 4.0 / 3.0, 0.0, VariableExponent::constant(g, 1.5));
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(sys.delta()[k] == doctest::Approx(0.5));
  const double pw = pointwise_lipschitz_norm(b, sys.delta()).norm;
  CHECK(integral_lipschitz_norm(b, sys).norm <= pw + 1e-6);
}

TEST_CASE("norm invariants") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 64);
  const auto b = random_function(g, 23);
  const auto delta = GridFunction::constant(g, 0.3);
  const auto p = builtin_exponent(g, "log_decay", {{"p_infty", 3.0}, {"c", 0.5}});
  const double pw = pointwise_lipschitz_norm(b, delta).norm;
  const double in = integral_lipschitz_norm(b, 2.0, p).norm;
  CHECK(std::abs(pointwise_lipschitz_norm(b.shifted(4.0), delta).norm - pw) <= 1e-12 * pw);
  CHECK(std::abs(integral_lipschitz_norm(b.shifted(4.0), 2.0, p).norm - in) <= 1e-12 * in);
  CHECK(std::abs(pointwise_lipschitz_norm(b.scaled(-3.0), delta).norm - 3.0 * pw) <= 1e-12 * pw);
  CHECK(std::abs(integral_lipschitz_norm(b.scaled(-3.0), 2.0, p).norm - 3.0 * in) <= 1e-12 * in);
  CHECK(integral_lipschitz_norm(GridFunction::constant(g, 2.0), 2.0, p).norm == 0.0);
}

TEST_CASE("oscillation bound") {
  const Grid g(1, {0.0, 0.0}, 1.0, 200);
  const auto delta = GridFunction::constant(g, 0.5);
  const Cube q = Cube::make(g, {40, 0}, 90);
  const auto c = oscillation_bound_check(GridFunction::constant(g, 1.0), delta, q, 0.0);
  CHECK(c.passed);
  const auto x = GridFunction::sample(g, [](const Point& p) { return p[0]; });
  const auto r = oscillation_bound_check(x, delta, q, pointwise_lipschitz_norm(x, delta).norm);
  CHECK(r.passed);
  CHECK(r.worst_ratio <= 1.0);
}

TEST_CASE("subsampled norms can understate the oscillation bound") {
  const Grid g(1, {0.0, 0.0}, 1.0, 400);
  // A ramp with a small jump: neighbouring pairs only see the jump, while the
  // oscillation over Q comes from the ramp.
  const auto b = GridFunction::sample(g, [](const Point& p) { return p[0] + (p[0] > 0.5 ? 0.05 : 0.0); });
  const auto delta = GridFunction::constant(g, 0.1);
  const Cube q = Cube::make(g, {100, 0}, 200);
  const PairSampling sparse{PairSampling::Mode::subsampled, 2, 0, 1};
  const auto stale = pointwise_lipschitz_norm(b, delta, sparse);
  const auto exact = pointwise_lipschitz_norm(b, delta, {PairSampling::Mode::exhaustive});
  CHECK(stale.approximate);
  CHECK(stale.norm < exact.norm);
  CHECK_FALSE(oscillation_bound_check(b, delta, q, stale.norm).passed);
  CHECK(oscillation_bound_check(b, delta, q, exact.norm).passed);
}
