#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "grushin/differentiation.hpp"
#include "grushin/quadrature.hpp"

using namespace grushin;

TEST_CASE("classic central weights on a uniform three-point stencil") {
  std::vector<double> stencil{-1.0, 0.0, 1.0};
  Eigen::MatrixXd w = fornberg_weights(0.0, stencil, 2);
  CHECK(w(0, 1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(w(1, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w(2, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w(0, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w(1, 2) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(w(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("derivative weights reproduce polynomials on scattered nodes") {
  std::vector<double> stencil{-0.9, -0.3, 0.1, 0.4, 1.1};
  Eigen::MatrixXd w = fornberg_weights(0.2, stencil, 2);
  // f(x) = x^3: f'(0.2) = 0.12, f''(0.2) = 1.2
  double d1 = 0.0, d2 = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double f = std::pow(stencil[i], 3);
    d1 += w(i, 1) * f;
    d2 += w(i, 2) * f;
  }
  CHECK(d1 == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(d2 == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("sliding stencils differentiate smooth samples accurately") {
  QuadratureRule rule = make_latitude_rule(200);
  DiffOps diff(rule.nodes);
  std::vector<double> f(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) f[i] = std::sin(2.0 * rule.nodes[i]);
  auto d1 = diff.derivative(f);
  auto d2 = diff.second_derivative(f);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    e1 = std::max(e1, std::abs(d1[i] - 2.0 * std::cos(2.0 * rule.nodes[i])));
    e2 = std::max(e2, std::abs(d2[i] + 4.0 * std::sin(2.0 * rule.nodes[i])));
  }
  CHECK(e1 < 1e-9);
  CHECK(e2 < 1e-6);
}

TEST_CASE("degree-five polynomials are differentiated exactly by 7-point stencils") {
  QuadratureRule rule = make_latitude_rule(40);
  DiffOps diff(rule.nodes);
  std::vector<double> f(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) f[i] = std::pow(rule.nodes[i], 5);
  auto d1 = diff.derivative(f);
  for (std::size_t i = 0; i < rule.size(); ++i)
    CHECK(d1[i] == doctest::Approx(5.0 * std::pow(rule.nodes[i], 4)).epsilon(1e-10));
}
