#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmd/catalog.hpp"
#include "qmd/fixtures.hpp"
#include "qmd/graph_lagrangian.hpp"
#include "support.hpp"

using namespace qmd;
using namespace qmd::testing;

TEST_CASE("flows compose by adding times") {
  const auto f = fixtures::saddle(), tau = fixtures::saddle_tau();
  for (int trial = 0; trial < 20; ++trial) {
    const double s = uniform(-1.0, 1.0), t = uniform(-1.0, 1.0);
    const GraphSection two = flow_translate(flow_translate(GraphSection(f), tau, s), tau, t);
    REQUIRE(two.terms().size() == 1);
    CHECK(two.terms()[0].second == s + t);
    const auto g = two.generator();
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(g.values[i] == doctest::Approx(f.values[i] - (s + t) * tau.values[i]).epsilon(1e-14).scale(1));
  }
  // Distinct taus are kept apart.
  const GraphSection mixed = flow_translate(flow_translate(GraphSection(f), tau, 0.5), f, 0.25);
  CHECK(mixed.terms().size() == 2);
  CHECK_THROWS_AS(flow_translate(GraphSection(f), fixtures::corner(), 1.0), GridMismatchError);
}

TEST_CASE("zero-section intersection is the critical set of the generator") {
  const Tolerances t;
  for (const auto& pair : catalog::qmd_pairs()) {
    CAPTURE(pair.name);
    for (double time : {0.0, 0.5, 1.0}) {
      const auto l = flow_translate(GraphSection(pair.f), pair.tau, time);
      const auto z = zero_section_intersection(l, t.grad_tol);
      const auto direct = critical_nodes(l.generator(), t.grad_tol);
      CHECK(z.all() == direct.all());
    }
  }
}

TEST_CASE("catalog QMD pairs stay isolated until t = 1") {
  for (const auto& pair : catalog::qmd_pairs()) {
    CAPTURE(pair.name);
    const auto r = isolation_scan(pair.f, pair.tau, pair.c, pair.s, pair.tols);
    CHECK(r.steps.size() == 64);
    CHECK(r.isolated_before_end);
    CHECK(r.end_within_s);
    CHECK(r.passed);
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      CHECK(r.steps[k].t == static_cast<double>(k) / 64.0);
      CHECK(r.steps[k].isolated);
    }
  }
}

TEST_CASE("at t = 1 the saddle intersection fills the chart") {
  const auto f = fixtures::saddle(), tau = fixtures::saddle_tau();
  const Tolerances t;
  const auto c = detect_critical_set(f, t.grad_tol);
  const auto r = isolation_scan(f, tau, c, fixtures::x_axis(), t);
  CHECK(r.end_within_s);
  // f - tau = -y^2 - y^4 vanishes to first order on the whole x-axis.
  CHECK_FALSE(r.end_equals_c);
}

TEST_CASE("a wrong tau breaks isolation") {
  // Flowing x^2 - y^2 by x^2 + y^2 creates critical lines before t = 1.
  const auto f = fixtures::saddle();
  const auto tau = ScalarField::sample({41, 41}, {-1.0, -1.0}, {1.0, 1.0}, {false, false},
                                       [](std::span<const double> p) { return 2.0 * p[0] * p[0] + p[1] * p[1]; });
  const Tolerances t;
  const auto c = detect_critical_set(f, t.grad_tol);
  const auto r = isolation_scan(f, tau, c, fixtures::x_axis(), t);
  CHECK_FALSE(r.isolated_before_end);
  CHECK_FALSE(r.passed);
}

TEST_CASE("step count is honoured") {
  const auto f = fixtures::quadric_plus_quartic(), tau = fixtures::quartic();
  const Tolerances t;
  const auto c = detect_critical_set(f, t.grad_tol);
  const auto r = isolation_scan(f, tau, c, fixtures::origin_point(1), t, 8);
  CHECK(r.steps.size() == 8);
  CHECK(r.passed);
}
