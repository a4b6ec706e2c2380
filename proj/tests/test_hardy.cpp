#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "grushin/hardy.hpp"
#include "grushin/legendre.hpp"
#include "grushin/transforms.hpp"

using namespace grushin;

TEST_CASE("closed-form check on w = cos x") {
  // the lhs integrand is constant in x but singular after the sin
  // substitution, so the direct-in-x rule is the right tool here
  QuadratureRule rule = make_direct_latitude_rule(200);
  DiffOps diff(rule.nodes);
  std::vector<double> w(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) w[i] = std::cos(rule.nodes[i]);
  auto [lhs, rhs] = hardy_pair(w, rule, diff);
  // int cos^2/cos^2 = pi, 4 int sin^2 = 2 pi
  CHECK(lhs == doctest::Approx(std::numbers::pi).epsilon(1e-8));
  CHECK(rhs == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-8));
  CHECK(lhs <= rhs);
}

TEST_CASE("inequality across transformed eigenfunctions and cosine powers") {
  QuadratureRule rule = make_latitude_rule(200);
  DiffOps diff(rule.nodes);
  std::vector<std::vector<double>> family;
  for (int n = 1; n <= 5; ++n)
    for (int l = n; l <= 10; ++l)
      family.push_back(map_U(eigenfunction_vnl(l, n, rule), rule));
  for (int k = 1; k <= 10; ++k) {
    std::vector<double> w(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) w[i] = std::pow(std::cos(rule.nodes[i]), k);
    family.push_back(std::move(w));
  }
  CHECK(hardy_constant_probe(family, rule, diff) <= 1.0);
}

TEST_CASE("averaging operator is bounded by 2 in the half-line norm") {
  QuadratureRule rule = make_latitude_rule(160);
  HalfLineSamples half = half_interval(rule);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f(half.nodes.size());
    for (auto& v : f) v = dist(rng);
    auto sf = operator_S(f, half);
    double nf = 0.0, ns = 0.0;
    for (std::size_t i = 0; i < half.nodes.size(); ++i) {
      nf += half.weights[i] * f[i] * f[i];
      ns += half.weights[i] * sf[i] * sf[i];
    }
    CHECK(ns <= 4.0 * nf * (1.0 + 1e-12));
  }
}

TEST_CASE("averaging operator tracks the closed form as the rule refines") {
  // f = cos: (S f)(x) = (1 - sin x)/cos x. The tail sums cut the global rule
  // at a node, so the error is first order in the node spacing.
  auto worst = [](int order) {
    QuadratureRule rule = make_latitude_rule(order);
    HalfLineSamples half = half_interval(rule);
    std::vector<double> f(half.nodes.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(half.nodes[i]);
    auto sf = operator_S(f, half);
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double exact = (1.0 - std::sin(half.nodes[i])) / std::cos(half.nodes[i]);
      e = std::max(e, std::abs(sf[i] - exact));
    }
    return e;
  };
  const double coarse = worst(100);
  const double fine = worst(400);
  CHECK(fine < coarse);
  CHECK(fine < 0.05);
}
