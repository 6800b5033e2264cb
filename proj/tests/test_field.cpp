#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qmd/field.hpp"
#include "qmd/fixtures.hpp"
#include "qmd/kernels.hpp"
#include "qmd/rho.hpp"
#include "support.hpp"

using namespace qmd;
using namespace qmd::testing;

namespace {

struct Quartic2 {
  double c[5][5];
  double operator()(double x, double y) const {
    double s = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) s += c[i][j] * std::pow(x, i) * std::pow(y, j);
    return s;
  }
  // d^(a+b) / dx^a dy^b
  double d(int a, int b, double x, double y) const {
    double s = 0.0;
    for (int i = a; i < 5; ++i)
      for (int j = b; j < 5; ++j) {
        double k = c[i][j];
        for (int t = 0; t < a; ++t) k *= i - t;
        for (int t = 0; t < b; ++t) k *= j - t;
        s += k * std::pow(x, i - a) * std::pow(y, j - b);
      }
    return s;
  }
};

Quartic2 random_quartic() {
  Quartic2 q{};
  for (auto& row : q.c)
    for (double& v : row) v = uniform(-1.0, 1.0);
  return q;
}

ScalarField random_field(std::size_t n0, std::size_t n1) {
  return ScalarField::sample({n0, n1}, {-1.0, 0.0}, {1.0, 2.0 * std::numbers::pi}, {false, true},
                             [a = uniform(0.5, 2.0), b = uniform(0.5, 2.0)](std::span<const double> p) {
                               return a * p[0] * p[0] * p[0] + std::sin(b * p[1]) * p[0];
                             });
}

}  // namespace

TEST_CASE("stencils are exact on quartics") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = random_quartic();
    const auto f = ScalarField::sample({13, 11}, {-1.0, -0.5}, {1.0, 1.5}, {false, false},
                                       [&](std::span<const double> p) { return q(p[0], p[1]); });
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!stencil_ok(f, i)) continue;
      const auto p = f.point(i);
      const auto g = gradient_at(f, i);
      CHECK(g[0] == doctest::Approx(q.d(1, 0, p[0], p[1])).epsilon(1e-9));
      CHECK(g[1] == doctest::Approx(q.d(0, 1, p[0], p[1])).epsilon(1e-9));
      const auto h = hessian_at(f, i);
      CHECK(h(0, 0) == doctest::Approx(q.d(2, 0, p[0], p[1])).epsilon(1e-8).scale(10));
      CHECK(h(1, 1) == doctest::Approx(q.d(0, 2, p[0], p[1])).epsilon(1e-8).scale(10));
      CHECK(h(0, 1) == doctest::Approx(q.d(1, 1, p[0], p[1])).epsilon(1e-8).scale(10));
      CHECK(h(0, 1) == h(1, 0));
    }
  }
}

TEST_CASE("stencil domain") {
  const auto f = ScalarField::sample({9, 6}, {0.0, 0.0}, {1.0, 1.0}, {false, true},
                                     [](std::span<const double> p) { return p[0]; });
  std::size_t ok = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = f.unflatten(i);
    const bool expect = idx[0] >= kStencilRadius && idx[0] + kStencilRadius < 9;
    CHECK(stencil_ok(f, i) == expect);
    if (expect) ++ok;
    else CHECK_THROWS_AS(hessian_at(f, i), std::out_of_range);
  }
  CHECK(ok == 5 * 6);
  CHECK_THROWS_AS(hessian_at(f, f.size()), std::out_of_range);
}

TEST_CASE("periodic sampling and offsets wrap") {
  const auto f = fixtures::torus_height(16);
  CHECK(f.spacing[0] == doctest::Approx(2.0 * std::numbers::pi / 16));
  const std::size_t corner = f.flat_index(std::vector<std::size_t>{0, 0});
  CHECK(f.unflatten(f.offset(corner, 0, -1)) == std::vector<std::size_t>{15, 0});
  CHECK(f.unflatten(f.offset(corner, 1, -2)) == std::vector<std::size_t>{0, 14});
  // d/dtheta sin(theta) at theta = 0 is 1; the stencil crosses the seam.
  CHECK(gradient_at(f, corner)[0] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("field arithmetic checks grids") {
  const auto a = fixtures::saddle();
  const auto b = fixtures::saddle_tau();
  const auto d = a - b;
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.values[i] == a.values[i] - b.values[i]);
  CHECK_THROWS_AS(a + fixtures::corner(), GridMismatchError);
  ScalarField bad = a;
  bad.values.pop_back();
  CHECK_THROWS(bad.validate());
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_field(static_cast<std::size_t>(uniform_int(5, 40)), static_cast<std::size_t>(uniform_int(5, 40)));
    auto g = f;
    for (double& v : g.values) v += uniform(-1e-3, 1e-3);
    const auto ns = kernels::serial::gradient_norms(f);
    const auto np = kernels::parallel::gradient_norms(f);
    REQUIRE(ns.size() == np.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      CHECK(std::isnan(ns[i]) == !stencil_ok(f, i));
      if (!std::isnan(ns[i])) CHECK(ns[i] == np[i]);
    }
    CHECK(kernels::serial::max_gradient_diff(f, g) == kernels::parallel::max_gradient_diff(f, g));
    CHECK(kernels::serial::max_abs_diff(f.values, g.values) == kernels::parallel::max_abs_diff(f.values, g.values));
    const Rho rho(uniform(0.05, 1.0));
    std::vector<double> rs(f.size()), rp(f.size());
    kernels::serial::apply_rho(rho, f.values, rs);
    kernels::parallel::apply_rho(rho, f.values, rp);
    CHECK(rs == rp);
  }
}

TEST_CASE("rho clauses") {
  for (double delta : {0.2, 0.1, 0.05, 0.025, 1.0, 3.7}) {
    const Rho rho(delta);
    for (int k = 0; k <= 400; ++k) {
      const double x = -delta + 3.0 * delta * k / 400.0;
      if (x <= delta / 2) {
        CHECK(rho(x) == 0.0);
      } else if (x >= delta) {
        CHECK(rho(x) == x);
      } else {
        CHECK(rho.derivative(x) > 0.0);
        CHECK(rho.derivative(x) < 3.0);
        CHECK(rho(x) >= 0.0);
      }
    }
    CHECK(rho(delta) == delta);
    CHECK(rho.derivative(delta) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(Rho(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Rho(-1.0), std::invalid_argument);
}

TEST_CASE("rho derivatives match finite differences") {
  const Rho rho(0.4);
  const double h = 1e-6;
  for (int k = 1; k < 200; ++k) {
    const double x = 0.2 + 0.2 * k / 200.0;
    CHECK(rho.derivative(x) == doctest::Approx((rho(x + h) - rho(x - h)) / (2 * h)).epsilon(1e-6).scale(1));
    CHECK(rho.second_derivative(x) ==
          doctest::Approx((rho.derivative(x + h) - rho.derivative(x - h)) / (2 * h)).epsilon(1e-5).scale(10));
  }
}

TEST_CASE("bounding boxes wrap on periodic axes") {
  GridMask m({8, 5}, {true, false});
  m.set(m.flat_index(std::vector<std::size_t>{7, 1}));
  m.set(m.flat_index(std::vector<std::size_t>{0, 3}));
  const Box b = bounding_box(m);
  CHECK(b.start == std::vector<std::size_t>{7, 1});
  CHECK(b.length == std::vector<std::size_t>{2, 3});
  const auto bm = b.mask(m.dims, m.periodic);
  CHECK(bm.count() == 6);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.at(i)) CHECK(bm.at(i));
  const Box big = inflate(b, 1, m.dims, m.periodic);
  CHECK(big.length == std::vector<std::size_t>{4, 5});
  CHECK_THROWS_AS(bounding_box(GridMask({3}, {false})), EmptyMaskError);
}

TEST_CASE("dilate and erode") {
  GridMask m({7, 7}, {false, false});
  m.set(m.flat_index(std::vector<std::size_t>{3, 3}));
  const auto d = dilate(m, 1);
  CHECK(d.count() == 9);
  CHECK(erode(d, 1) == m);
  CHECK(dilate(m, 2).count() == 25);
  GridMask ring({6}, {true});
  ring.set(0);
  CHECK(dilate(ring, 1).count() == 3);
  CHECK(dilate(ring, 1).at(5));
}

TEST_CASE("critical set detection") {
  const auto cs = detect_critical_set(fixtures::x_squared(), 1e-3);
  REQUIRE(cs.size() == 1);
  CHECK(cs.components[0].count() == 1);
  const auto torus = detect_critical_set(fixtures::torus_height(64), 1e-3);
  CHECK(torus.size() == 2);  // the two circles sin = -1 and sin = 1
  for (const auto& c : torus.components) CHECK(c.count() == 64);
  const auto line = ScalarField::sample({21}, {0.0}, {1.0}, {false}, [](std::span<const double> p) { return p[0]; });
  CHECK_THROWS_AS(detect_critical_set(line, 1e-3), NoCriticalPointsError);
  CHECK(critical_nodes(line, 1e-3).size() == 0);
  CHECK_THROWS_AS(detect_critical_set(line, 0.0), std::invalid_argument);
}
