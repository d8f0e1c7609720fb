#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "varlip/error.hpp"
#include "varlip/exponents.hpp"

using namespace varlip;

namespace {

Grid line(int n, double lo = -1.0, double side = 2.0) { return Grid(1, {lo, 0.0}, side, n); }

}  // namespace

TEST_CASE("exponent validation") {
  const Grid g = line(8);
  CHECK_THROWS_AS(VariableExponent(GridFunction::constant(g, 1.0), 2.0), Error);
  CHECK_THROWS_AS(VariableExponent(GridFunction::constant(g, 2.0), 1.0), Error);
  const auto p = builtin_exponent(g, "constant", {{"p0", 2.0}});
  CHECK(p.p_minus() == 2.0);
  CHECK(p.p_plus() == 2.0);
  try {
    builtin_exponent(g, "sawtooth", {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::argument);
  }
  CHECK_THROWS_AS(builtin_exponent(g, "log_decay", {{"p_infty", 2.0}, {"c", -1.0}}), Error);
  CHECK_THROWS_AS(builtin_exponent(g, "log_decay", {{"p_infty", 2.0}, {"c", 1.0}, {"x", 1.0}}),
                  Error);
}

TEST_CASE("conjugate exponents") {
  const Grid g = line(64);
  CHECK(conjugate(VariableExponent::constant(g, 2.0))[5] == 2.0);
  CHECK(conjugate(VariableExponent::constant(g, 4.0))[5] == doctest::Approx(4.0 / 3.0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1.1, 4.0), c(0.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    const auto p = builtin_exponent(g, "log_decay", {{"p_infty", u(rng)}, {"c", c(rng)}});
    const auto pc = conjugate(p);
    const auto back = conjugate(pc);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(std::abs(1.0 / p[k] + 1.0 / pc[k] - 1.0) < 1e-14);
      CHECK(std::abs(back[k] - p[k]) < 1e-14 * p[k]);
    }
    CHECK(pc.p_minus() == doctest::Approx(p.p_plus() / (p.p_plus() - 1.0)));
    CHECK(pc.p_plus() == doctest::Approx(p.p_minus() / (p.p_minus() - 1.0)));
  }
}

TEST_CASE("derived exponents") {
  const Grid g = line(16);
  const auto p4 = VariableExponent::constant(g, 4.0);
  CHECK(derive_delta(p4, 2.0, 1)[3] == doctest::Approx(0.25));
  CHECK(derive_delta(p4, 2.0, 2)[3] == doctest::Approx(0.5));
  CHECK_THROWS_AS(derive_delta(p4, 4.0, 1), Error);
  CHECK_THROWS_AS(derive_delta(p4, 1.0, 1), Error);

  const auto r2 = VariableExponent::constant(g, 2.0);
  const auto delta = GridFunction::constant(g, 0.25);
  CHECK(derive_q(r2, delta, 0.0, 1)[0] == doctest::Approx(4.0));
  try {
    derive_q(r2, delta, 0.25, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::exponent_range);
  }

  const auto p = builtin_exponent(g, "log_decay", {{"p_infty", 3.5}, {"c", 0.5}});
  const auto sys = ExponentSystem::make(p, 2.0, 0.1, r2);
  CHECK(sys.relation_residual() < 1e-12);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(sys.delta()[k] / 1.0 == doctest::Approx(1.0 / 2.0 - 1.0 / p[k]));
    const double back = sys.delta()[k] + 1.0 / sys.q()[k] - 1.0 / sys.r()[k] + sys.alpha();
    CHECK(std::abs(back) < 1e-12);
  }
}

TEST_CASE("exponent system hypotheses") {
  const Grid g = line(16);
  const auto r2 = VariableExponent::constant(g, 2.0);
  // p below its declared limit somewhere.
  std::vector<double> v(g.size(), 3.0);
  v[4] = 2.9;
  const VariableExponent dip(GridFunction(g, v), 3.0);
  try {
    ExponentSystem::make(dip, 2.0, 0.0, r2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::hypothesis);
  }
  const auto p = VariableExponent::constant(g, 3.0);
  CHECK_THROWS_AS(ExponentSystem::make(p, 2.0, 1.0, r2), Error);
  CHECK_THROWS_AS(ExponentSystem::make(p, 3.5, 0.0, r2), Error);
}

TEST_CASE("builtin families respect p >= p_infty") {
  const Grid g = line(257);
  const auto ld = builtin_exponent(g, "log_decay", {{"p_infty", 2.0}, {"c", 0.5}});
  CHECK(ld.p_minus() >= 2.0);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(ld[k] >= *ld.p_infty());
  const auto sb = builtin_exponent(g, "smooth_bump", {{"p_infty", 3.0}, {"a", 1.0}, {"s", 0.5}});
  CHECK(sb.p_plus() <= 4.0);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(sb[k] >= 3.0);
  const Grid g2(2, {-1.0, -1.0}, 2.0, 20);
  const auto ld2 = builtin_exponent(g2, "log_decay", {{"p_infty", 2.0}, {"c", 0.5}});
  for (std::size_t k = 0; k < g2.size(); ++k) CHECK(ld2[k] >= 2.0);
}

TEST_CASE("log-Holder constants") {
  const Grid g = line(128);
  const auto est = log_holder_constants(VariableExponent::constant(g, 2.5));
  CHECK(est.c_log == 0.0);
  CHECK(est.c_infty == 0.0);

  const Grid wide = line(400, -20.0, 40.0);
  const auto ld = builtin_exponent(wide, "log_decay", {{"p_infty", 2.0}, {"c", 0.7}});
  CHECK(log_holder_constants(ld).c_infty <= 0.7 + 1e-9);

  // A jump at 0 makes c_log grow like ln(1/h).
  std::vector<double> logs, cs;
  for (int n : {64, 128, 256, 512}) {
    const Grid gn = line(n);
    const auto step = VariableExponent(
        GridFunction::sample(gn, [](const Point& x) { return x[0] < 0.0 ? 2.0 : 3.0; }), 3.0);
    cs.push_back(log_holder_constants(step).c_log);
    logs.push_back(std::log(1.0 / gn.spacing()));
  }
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const double slope = (cs[i] - cs[i - 1]) / (logs[i] - logs[i - 1]);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.1));
  }
}

TEST_CASE("log-Holder estimate is monotone in the pair set") {
  const Grid g = line(600);
  const auto p = builtin_exponent(g, "smooth_bump", {{"p_infty", 2.0}, {"a", 1.5}, {"s", 0.05}});
  PairSampling few{PairSampling::Mode::subsampled, 2, 100, 7};
  PairSampling more{PairSampling::Mode::subsampled, 8, 100, 7};
  PairSampling all{PairSampling::Mode::exhaustive};
  const auto a = log_holder_constants(p, few);
  const auto b = log_holder_constants(p, more);
  const auto c = log_holder_constants(p, all);
  CHECK(a.approximate);
  CHECK_FALSE(c.approximate);
  CHECK(a.c_log <= b.c_log);
  CHECK(b.c_log <= c.c_log);
}
