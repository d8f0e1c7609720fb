#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "varlip/error.hpp"
#include "varlip/harness/checks.hpp"
#include "varlip/harness/config.hpp"
#include "varlip/harness/context.hpp"
#include "varlip/harness/family.hpp"
#include "varlip/harness/json_out.hpp"
#include "varlip/harness/report.hpp"
#include "varlip/harness/suite.hpp"

using namespace varlip;
using namespace varlip::harness;

namespace {

template <class Fn>
Error caught(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::argument, "");
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("operator norm estimate of scaled identities") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 64);
  const auto p = builtin_exponent(g, "log_decay", {{"p_infty", 3.0}, {"c", 0.5}});
  const auto fam = make_test_family(g, 7, 8);
  const auto id = operator_norm_estimate([](const GridFunction& f) { return f; }, p, p, fam.members);
  CHECK(id.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.per_member.size() == 8);
  const auto twice =
      operator_norm_estimate([](const GridFunction& f) { return f.scaled(2.0); }, p, p, fam.members);
  CHECK(twice.ratio == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("config schema errors carry a JSON pointer") {
  auto e = caught([] { parse_config(R"({"grid": {"dim": 1, "size": 3}})"); });
  CHECK(e.code() == ErrorCode::schema);
  CHECK(contains(e.what(), "/grid/size"));

  e = caught([] { parse_config(R"({"beta": "two"})"); });
  CHECK(e.code() == ErrorCode::schema);
  CHECK(contains(e.what(), "/beta"));

  e = caught([] { parse_config(R"({"grid": {"dim": 2, "cells": 1024}})"); });
  CHECK(contains(e.what(), "/grid/cells"));

  e = caught([] { parse_config("{ not json"); });
  CHECK(e.code() == ErrorCode::schema);

  e = caught([] { parse_config(R"({"schedule": {"mode": "explicit", "widths": [4096]}})"); });
  CHECK(e.code() == ErrorCode::schema);

  const Config c = parse_config(R"({"grid": {"dim": 2}})");
  CHECK(c.main_grid().cells_per_axis() == 64);
  CHECK(c.probe_grid().cells_per_axis() == 16);
}

TEST_CASE("beta outside (1, p_minus) is rejected before any check runs") {
  const Config c = parse_config(R"({"beta": 5.0})");
  const auto e = caught([&] { Context ctx(c, c.family_seed); });
  CHECK(contains(e.what(), "hypothesis"));
  CHECK(contains(e.what(), "beta"));
}

TEST_CASE("check selection") {
  const auto ids = check_ids();
  CHECK(ids.size() == check_registry().size());
  CHECK(ids.back() == "suite_self_audit");
  const auto e = caught([] { select_checks({"no_such_check"}); });
  CHECK(e.code() == ErrorCode::argument);
  CHECK(contains(e.what(), "norm_homogeneity"));
  const auto picked = select_checks({"norm_homogeneity", "norm_constant_exponent"});
  REQUIRE(picked.size() == 2);
  CHECK(picked[0] == "norm_constant_exponent");
}

TEST_CASE("report settling and serialization") {
  CheckReport r;
  r.check_id = "x";
  r.paper_location = "a, \"quoted\" place";
  r.measured = 1.0;
  r.bound = 1.0;
  r.settle();
  CHECK(r.passed);
  r.measured = std::nan("");
  r.settle();
  CHECK_FALSE(r.passed);
  r.bound.reset();
  r.settle();
  CHECK(r.passed);

  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(INFINITY) == "null");
  CHECK(dump_json(Json{{"v", std::nan("")}}, -1) == R"({"v":null})");

  r.measured = 0.5;
  r.bound = 2.0;
  r.runtime_ms = 1.5;
  r.settle();
  const std::string csv = summary_csv({r});
  CHECK(csv ==
        "check_id,paper_location,measured,bound,passed,runtime_ms\r\n"
        "x,\"a, \"\"quoted\"\" place\",0.5,2,true,1.500\r\n");
  CHECK_FALSE(to_json(r).contains("runtime_ms"));
}

TEST_CASE("suite runs are deterministic and independent of the filter") {
  const Config c = parse_config(R"({"grid": {"cells": 256, "probe_cells": 64}})");
  SuiteOptions both{{"norm_homogeneity", "holder_constant"}, std::nullopt};
  const auto a = run_suite(c, both);
  const auto b = run_suite(c, both);
  CHECK(payload_text(a.document) == payload_text(b.document));
  CHECK(a.exit_code == 0);

  const auto alone = run_suite(c, {{"holder_constant"}, std::nullopt});
  CHECK(dump_json(to_json(alone.reports[0])) == dump_json(to_json(a.reports[1])));

  const auto reseeded = run_suite(c, {{"holder_constant"}, 99});
  CHECK(reseeded.reports[0].measured != alone.reports[0].measured);
  CHECK(reseeded.document["payload"]["seed"] == 99);
}

TEST_CASE("blow-up probe") {
  const Grid small(1, {-1.0, 0.0}, 2.0, 16);
  const auto p = VariableExponent::constant(small, 4.0);
  const auto sys = ExponentSystem::make(p, 2.0, 0.0, VariableExponent::constant(small, 2.0));
  const auto step = builtin_symbol(small, "step", {{"x0", 0.0}, {"height", 1.0}});
  const auto e = caught([&] { blowup_probe(step, sys, {0.0, 0.0}); });
  CHECK(e.code() == ErrorCode::insufficient_data);

  const Grid g(1, {-1.0, 0.0}, 2.0, 1024);
  const auto q = ExponentSystem::make(VariableExponent::constant(g, 4.0), 2.0, 0.0,
                                      VariableExponent::constant(g, 2.0));
  const auto res = blowup_probe(builtin_symbol(g, "step", {{"x0", 0.0}, {"height", 1.0}}), q, {0.0, 0.0});
  CHECK(res.predicted == doctest::Approx(-0.25));
  CHECK(res.fitted >= 4);
  CHECK(std::abs(res.slope - res.predicted) <= 0.2 * 0.25);
  const auto flat = blowup_probe(GridFunction::constant(g, 3.0), q, {0.0, 0.0});
  CHECK(flat.degenerate);
}

TEST_CASE("theorem hypotheses are gated") {
  const Grid g(1, {-1.0, 0.0}, 2.0, 64);
  const auto p = builtin_exponent(g, "log_decay", {{"p_infty", 3.5}, {"c", 0.5}});
  const auto r = VariableExponent::constant(g, 2.0);
  const auto sys = ExponentSystem::make(p, 2.0, 0.0, r);
  const auto b = builtin_symbol(g, "linear", {{"slope", 1.0}});
  CHECK_NOTHROW(validate_hypotheses(Theorem::sharp_commutator, sys, b));
  CHECK_NOTHROW(validate_hypotheses(Theorem::maximal_commutator, sys, b.shifted(-5.0)));

  auto e = caught([&] { validate_hypotheses(Theorem::sharp_commutator, sys, b.shifted(-5.0)); });
  CHECK(e.code() == ErrorCode::hypothesis);
  CHECK(contains(e.what(), "hypothesis violated"));

  const auto frac = ExponentSystem::make(p, 2.0, 0.1, VariableExponent::constant(g, 1.5));
  e = caught([&] { validate_hypotheses(Theorem::sharp_commutator, frac, b); });
  CHECK(contains(e.what(), "alpha"));
  CHECK_NOTHROW(validate_hypotheses(Theorem::fractional_commutator, frac, b));
}

TEST_CASE("test family and symbol corpus are reproducible") {
  const Grid g(2, {-1.0, -1.0}, 2.0, 16);
  const auto a = make_test_family(g, 5);
  const auto b = make_test_family(g, 5);
  REQUIRE(a.members.size() == 20);
  for (std::size_t k = 0; k < a.members.size(); ++k) {
    const auto x = a.members[k].values();
    const auto y = b.members[k].values();
    CHECK(std::equal(x.begin(), x.end(), y.begin(), y.end()));
    CHECK(a.members[k].max_abs() > 0.0);
  }
  for (const auto& s : symbol_corpus(g, 5)) {
    CHECK(s.values.min() == doctest::Approx(0.0));
    CHECK(s.values.max() > s.values.min());
  }
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double u = rng.unit();
    CHECK((u >= 0.0 && u < 1.0));
  }
}
