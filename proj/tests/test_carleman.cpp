#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grushin/carleman.hpp"
#include "grushin/legendre.hpp"
#include "grushin/transforms.hpp"

using namespace grushin;

namespace {
BetaWeight default_weight() {
  auto wc = search_weight_constants(0.6, 1.2, 0.8, 1.0);
  return build_beta(0.6, 1.2, 0.8, 1.0, wc.A1, wc.A2, wc.A3);
}

SpectralSolution make_solution(int n, int l, const QuadratureRule& rule) {
  SpectralSolution sol;
  sol.n = n;
  sol.lambda = static_cast<double>(eigenvalue(l, n));
  sol.w = map_U(eigenfunction_vnl(l, n, rule), rule);
  return sol;
}
}  // namespace

TEST_CASE("time weight derivatives match finite differences") {
  const double T = 1.3;
  for (double t : {0.11, 0.4, 0.65, 1.0, 1.22}) {
    auto v = theta_eval(t, T);
    CHECK(v.th == doctest::Approx(1.0 / (t * (T - t))).epsilon(1e-14));
    const double h = 1e-6;
    const double fd1 = (theta_eval(t + h, T).th - theta_eval(t - h, T).th) / (2.0 * h);
    const double fd2 = (theta_eval(t + h, T).d1 - theta_eval(t - h, T).d1) / (2.0 * h);
    CHECK(v.d1 == doctest::Approx(fd1).epsilon(1e-7));
    CHECK(v.d2 == doctest::Approx(fd2).epsilon(1e-7));
  }
  CHECK_THROWS_AS(theta_eval(0.0, T), std::invalid_argument);
  CHECK_THROWS_AS(theta_eval(T, T), std::invalid_argument);
}

TEST_CASE("time weight inequalities hold across short and long horizons") {
  for (double T : {0.1, 1.0, 10.0}) {
    auto rep = theta_inequalities_check(T, 1000);
    CHECK(rep.all_hold());
    CHECK(rep.margin_theta >= 0.0);
    CHECK(rep.margin_d1 >= 0.0);
    CHECK(rep.margin_theta_d1 >= 0.0);
    CHECK(rep.margin_d2 >= 0.0);
  }
}

TEST_CASE("spatial weight blends are continuous through the fourth derivative") {
  BetaWeight w = default_weight();
  // The blend's 5th derivative is huge (the search picks aggressive
  // constants), so the junction step must be tiny for the 4th order.
  const double d = 1e-10;
  for (double x0 : {w.a_prime, w.b_prime, -w.a_prime, -w.b_prime}) {
    for (int m = 0; m <= 4; ++m) {
      const double inside = w.eval(x0 - std::copysign(d, x0), m);
      const double outside = w.eval(x0 + std::copysign(d, x0), m);
      const double scale = std::max({std::abs(inside), std::abs(outside), 1.0});
      CHECK(std::abs(inside - outside) / scale < 1e-2);
    }
  }
  // derivative orders are consistent with finite differences inside the
  // closed-form pieces (the blend polynomial is checked by continuity above)
  for (double x : {0.3, 1.35, -0.3, -1.35}) {
    for (int m = 1; m <= 4; ++m) {
      const double h = 1e-5;
      const double fd = (w.eval(x + h, m - 1) - w.eval(x - h, m - 1)) / (2.0 * h);
      const double scale = std::max(std::abs(w.eval(x, m)), 1.0);
      CHECK(std::abs(w.eval(x, m) - fd) / scale < 1e-4);
    }
  }
}

TEST_CASE("weight construction rejects bad geometry and infeasible constants") {
  CHECK_THROWS_AS(build_beta(0.8, 1.2, 0.6, 1.0, 2.0, 10.0, 12.0), std::invalid_argument);
  CHECK_THROWS_AS(build_beta(0.6, 1.2, 0.8, 1.0, 2.0, 10.0, 12.0, 10), std::invalid_argument);
  // A2 = A3 = 0 leaves beta below 1 near the degeneracy
  CHECK_THROWS_AS(build_beta(0.6, 1.2, 0.8, 1.0, 2.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("admissibility constants match their closed forms") {
  BetaWeight w = default_weight();
  auto c = admissibility_constants(w);
  const double t1 = std::tan(w.a_prime) + w.a_prime + w.A3;
  CHECK(c.C1 == doctest::Approx(t1 * t1).epsilon(1e-13));
  CHECK(c.C5 == doctest::Approx(1.0 / std::pow(std::sin(w.b_prime), 4)).epsilon(1e-13));
  const double t6 = 1.0 / std::tan(w.b_prime) + w.A1;
  CHECK(c.C6 == doctest::Approx(t6 * t6).epsilon(1e-13));
  CHECK(c.R0 == doctest::Approx(std::max(c.s1, c.s2)).epsilon(1e-15));
  CHECK(c.T_star == doctest::Approx(27.0 * c.R0 * w.beta_max / 2.0).epsilon(1e-13));
  CHECK(c.T_star_min <= c.T_star);
  CHECK(c.C12 == doctest::Approx(c.C11 + c.C10 / (8.0 * c.R0 * c.R0)).epsilon(1e-13));
}

TEST_CASE("conjugated-variable split identity closes on spectral solutions") {
  BetaWeight w = default_weight();
  auto c = admissibility_constants(w);
  QuadratureRule rule = make_latitude_rule(128);
  DiffOps diff(rule.nodes);
  TimeGrid grid = make_time_grid(1.0, 16);
  for (auto [n, l] : std::vector<std::pair<int, int>>{{1, 2}, {2, 4}, {3, 5}, {4, 6}}) {
    SpectralSolution sol = make_solution(n, l, rule);
    CarlemanParams params = make_params(1.0, c.R0, 1.0, n);
    CHECK(split_identity_check(sol, params, w, rule, diff, grid) < 1e-5);
  }
}

TEST_CASE("kernel lower bounds have nonnegative margins at admissible scale") {
  BetaWeight w = default_weight();
  auto c = admissibility_constants(w);
  QuadratureRule rule = make_latitude_rule(96);
  DiffOps diff(rule.nodes);
  TimeGrid grid = make_time_grid(1.0, 16);
  for (int n : {1, 3, 6}) {
    SpectralSolution sol = make_solution(n, n + 2, rule);
    CarlemanParams params = make_params(1.0, c.R0, 1.0, n);
    auto bounds = kernel_bounds_check(sol, params, w, rule, diff, grid);
    CHECK(bounds.all_nonnegative());
  }
  // below the admissibility threshold the check refuses to run
  SpectralSolution sol = make_solution(2, 3, rule);
  CarlemanParams low = make_params(0.5, c.R0, 1.0, 2);
  CHECK_THROWS_AS(kernel_bounds_check(sol, low, w, rule, diff, grid), std::invalid_argument);
}

TEST_CASE("inequality diagnostic produces finite positive ratios") {
  BetaWeight w = default_weight();
  QuadratureRule rule = make_latitude_rule(96);
  DiffOps diff(rule.nodes);
  TimeGrid grid = make_time_grid(1.0, 24);
  std::vector<SpectralSolution> family;
  for (auto [n, l] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 2}, {3, 4}, {5, 6}})
    family.push_back(make_solution(n, l, rule));
  auto ratios = carleman_diagnostic(family, 1.0, 1.0, w, 0.6, 1.2, rule, diff, grid);
  REQUIRE(ratios.size() == family.size());
  for (double r : ratios) {
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
  }
}
