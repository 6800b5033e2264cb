#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qmd/maslov.hpp"
#include "generators.hpp"

using namespace qmd;
using namespace qmd::testing;

TEST_CASE("worked examples") {
  const auto quarter = path({0.0, 0.5, 1.0}, {0.0, kPi / 4, kPi / 2});
  CHECK(maslov(quarter, constant(0.0)).str() == "1/2");
  CHECK(maslov(constant(0.0), quarter).str() == "-1/2");
  const auto through = path({0.0, 1.0}, {-0.4, 0.4});
  CHECK(maslov(through, constant(0.0)) == HalfInteger::from_int(1));
  const auto full_turn = path({0.0, 0.25, 0.5, 0.75, 1.0}, {0.1, 0.1 + kPi / 4, 0.1 + kPi / 2, 0.1 + 3 * kPi / 4, 0.1 + kPi});
  CHECK(maslov(full_turn, constant(0.0)) == HalfInteger::from_int(1));
  CHECK(maslov(constant(0.3), constant(1.0)) == HalfInteger{});
  const auto same = maslov_crossings(quarter, quarter);
  CHECK(same.identically_crossing);
  CHECK(same.index == HalfInteger{});
  // A crossing at an interior breakpoint that turns back counts zero.
  const auto bounce = path({0.0, 0.5, 1.0}, {-0.3, 0.0, -0.3});
  CHECK(maslov(bounce, constant(0.0)) == HalfInteger{});
  const auto kink = path({0.0, 0.5, 1.0}, {-0.3, 0.0, 0.6});
  CHECK(maslov(kink, constant(0.0)) == HalfInteger::from_int(1));
}

TEST_CASE("half-integer arithmetic and printing") {
  CHECK(HalfInteger{1}.str() == "1/2");
  CHECK(HalfInteger{-3}.str() == "-3/2");
  CHECK(HalfInteger{-4}.str() == "-2");
  CHECK(HalfInteger{0}.str() == "0");
  CHECK((HalfInteger{1} + HalfInteger{1}) == HalfInteger::from_int(1));
  CHECK(HalfInteger{3}.is_integer() == false);
}

TEST_CASE("crossing count matches the lattice oracle") {
  int endpoint_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto [a, b] = random_pair();
    const auto r = maslov_crossings(a, b);
    for (const auto& c : r.crossings) endpoint_cases += c.endpoint;
    CHECK(r.index == oracle(a, b));
  }
  CHECK(endpoint_cases > 50);
}

TEST_CASE("concatenation is additive") {
  for (int trial = 0; trial < 150; ++trial) {
    const auto a1 = random_path(uniform(-kPi, kPi)), b1 = random_path(uniform(-kPi, kPi));
    const auto a2 = random_path(own_lift(a1.angles).back() + kPi * uniform_int(-1, 1));
    const auto b2 = random_path(own_lift(b1.angles).back());
    const auto whole = maslov(concat(a1, a2), concat(b1, b2));
    CHECK(whole == maslov(a1, b1) + maslov(a2, b2));
  }
  CHECK_THROWS_AS(concat(constant(0.0), constant(1.0)), PathError);
}

TEST_CASE("endpoint parity") {
  for (int trial = 0; trial < 150; ++trial) {
    const auto [a, b] = random_pair();
    const auto mu = maslov(a, b);
    const long dims = intersection_dim(a, b, 0.0) + intersection_dim(a, b, 1.0);
    CHECK(((mu.twice - dims) % 2 + 2) % 2 == 0);
  }
}

TEST_CASE("constant intersection gives zero") {
  for (int trial = 0; trial < 150; ++trial) {
    const auto b = random_path(uniform(-kPi, kPi));
    auto a = b;
    const double offset = uniform(0.05, kPi - 0.05);
    for (double& v : a.angles) v += offset;  // never meets b
    CHECK(maslov(a, b) == HalfInteger{});
    for (double t : {0.0, 0.3, 1.0}) CHECK(intersection_dim(a, b, t) == 0);
    auto c = b;
    for (double& v : c.angles) v += kPi * uniform_int(-2, 2);  // always meets b
    CHECK(maslov(c, b) == HalfInteger{});
  }
}

TEST_CASE("conjugation by a symplectic matrix") {
  for (int trial = 0; trial < 150; ++trial) {
    const auto [a, b] = random_pair();
    const Matrix2 m = random_sl2();
    CHECK(maslov(conjugate(a, m), conjugate(b, m)) == maslov(a, b));
  }
  CHECK_THROWS_AS(conjugate(constant(0.0), Matrix2{{{2.0, 0.0}, {0.0, 2.0}}}), std::invalid_argument);
}

TEST_CASE("reparameterization and reversal") {
  for (int trial = 0; trial < 150; ++trial) {
    const auto [a, b] = random_pair();
    const double gamma = std::exp(uniform(-1.0, 1.0));
    auto warp = [&](LagrangianLinePath p) {
      for (double& t : p.times) t = std::pow(t, gamma);
      return p;
    };
    CHECK(maslov(warp(a), warp(b)) == maslov(a, b));
    CHECK(maslov(reverse(a), reverse(b)) == -maslov(a, b));
  }
}

TEST_CASE("index shift") {
  for (long dim = 0; dim < 5; ++dim)
    for (long twice = -6; twice <= 6; ++twice) {
      if ((twice - dim) % 2 == 0) CHECK(index_shift(HalfInteger{twice}, dim) * 2 == twice - dim);
      else CHECK_THROWS_AS(index_shift(HalfInteger{twice}, dim), CoherenceError);
    }
  CHECK_THROWS_AS(index_shift(HalfInteger{0}, -1), CoherenceError);
  // Coherent inputs from actual paths: 2i has the parity of the endpoint dimensions.
  for (int trial = 0; trial < 100; ++trial) {
    const auto [a, b] = random_pair();
    const auto mu = maslov(a, b);
    const long dims = intersection_dim(a, b, 0.0) + intersection_dim(a, b, 1.0);
    CHECK_NOTHROW(index_shift(mu, dims));
  }
}

TEST_CASE("bad paths and tangential crossings") {
  CHECK_THROWS_AS(maslov(path({0.0}, {0.0}), constant(0.0)), PathError);
  CHECK_THROWS_AS(maslov(path({0.0, 1.0}, {0.0}), constant(0.0)), PathError);
  CHECK_THROWS_AS(maslov(path({0.0, 0.5, 0.5, 1.0}, {0.0, 0.1, 0.2, 0.3}), constant(0.0)), PathError);
  CHECK_THROWS_AS(maslov(path({0.1, 1.0}, {0.0, 0.1}), constant(0.0)), PathError);
  CHECK_THROWS_AS(maslov(path({0.0, 1.0}, {0.0, kPi / 2}), constant(0.0)), PathError);
  CHECK_THROWS_AS(maslov(path({0.0, 1.0}, {0.0, NAN}), constant(0.0)), PathError);
  const auto stall = path({0.0, 0.5, 1.0}, {0.0, 0.0, 0.5});
  CHECK_THROWS_AS(maslov(stall, constant(0.0)), NonRegularCrossingError);
}
