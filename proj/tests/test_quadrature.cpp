#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "grushin/quadrature.hpp"

using namespace grushin;

TEST_CASE("gauss nodes are symmetric and integrate high-degree monomials") {
  std::vector<double> t, w;
  gauss_legendre(5, t, w);
  REQUIRE(t.size() == 5);
  double wsum = 0.0;
  for (double wi : w) wsum += wi;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(t[0] == doctest::Approx(-t[4]).epsilon(1e-14));
  // order 5 is exact through degree 9
  double acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) acc += w[i] * std::pow(t[i], 8);
  CHECK(acc == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("latitude rule reproduces closed-form weighted integrals") {
  QuadratureRule rule = make_latitude_rule(32);
  std::vector<double> one(rule.size(), 1.0), s2(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) s2[i] = std::pow(std::sin(rule.nodes[i]), 2);
  CHECK(integrate_weighted(one, rule) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate_weighted(s2, rule) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("plain inner product undoes the cosine weight") {
  QuadratureRule rule = make_latitude_rule(64);
  // f = sin x sqrt(cos x): the plain product is int sin^2 cos = 2/3, again a
  // polynomial in sin x, so the rule is exact.
  std::vector<double> f(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
    f[i] = std::sin(rule.nodes[i]) * std::sqrt(std::cos(rule.nodes[i]));
  CHECK(inner_plain(f, f, rule) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("direct rule handles integrands that are rough in the sine variable") {
  // int cos^2 x dx = pi/2 has a sqrt endpoint singularity after the sin
  // substitution; placed directly in x it is analytic.
  QuadratureRule rule = make_direct_latitude_rule(64);
  std::vector<double> c(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) c[i] = std::cos(rule.nodes[i]);
  CHECK(inner_plain(c, c, rule) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-13));
  std::vector<double> one(rule.size(), 1.0);
  CHECK(integrate_weighted(one, rule) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("interval rule integrates the measure over a crown") {
  const double a = 0.6, b = 1.2;
  QuadratureRule rule = make_interval_rule(a, b, 24);
  std::vector<double> one(rule.size(), 1.0);
  CHECK(integrate_weighted(one, rule) ==
        doctest::Approx(std::sin(b) - std::sin(a)).epsilon(1e-14));
  for (double x : rule.nodes) {
    CHECK(x > a);
    CHECK(x < b);
  }
}

TEST_CASE("time grids keep nodes inside the horizon") {
  TimeGrid grid = make_time_grid(2.0, 10);
  CHECK(grid.horizon == 2.0);
  CHECK(grid.panel_count() == 10);
  for (double t : grid.nodes) {
    CHECK(t > 0.0);
    CHECK(t < 2.0);
  }
  // clearance trims both ends
  CHECK(grid.panels.front() == doctest::Approx(2e-3));
  CHECK(grid.panels.back() == doctest::Approx(2.0 - 2e-3));
}

TEST_CASE("control grid covers the full window and integrates exactly") {
  TimeGrid grid = make_control_grid(1.5, 8);
  CHECK(grid.panels.front() == 0.0);
  CHECK(grid.panels.back() == doctest::Approx(1.5).epsilon(1e-15));
  std::vector<double> vals(grid.nodes.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = grid.nodes[i] * grid.nodes[i];
  CHECK(integrate_time(vals, grid) == doctest::Approx(std::pow(1.5, 3) / 3.0).epsilon(1e-14));
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(make_latitude_rule(1), std::invalid_argument);
  CHECK_THROWS_AS(make_interval_rule(1.0, 0.5, 12), std::invalid_argument);
  CHECK_THROWS_AS(make_time_grid(-1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_time_grid_on(0.5, 0.2, 1.0, 4), std::invalid_argument);
}
