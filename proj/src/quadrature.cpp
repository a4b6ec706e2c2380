#include "grushin/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grushin {

namespace {

void check_lengths(std::span<const double> f, std::span<const double> g,
                   const QuadratureRule& rule) {
  if (f.size() != rule.size() || g.size() != rule.size())
    throw std::invalid_argument("sample length does not match quadrature rule");
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi-type initial guess, then Newton on P_order.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

QuadratureRule make_latitude_rule(int order) {
  if (order < 2) throw std::invalid_argument("make_latitude_rule: order must be >= 2");
  std::vector<double> t, w;
  gauss_legendre(order, t, w);
  QuadratureRule rule;
  rule.kind = "latitude";
  rule.nodes.resize(t.size());
  rule.weights = w;
  for (std::size_t i = 0; i < t.size(); ++i) rule.nodes[i] = std::asin(t[i]);
  return rule;
}

QuadratureRule make_direct_latitude_rule(int order) {
  if (order < 2)
    throw std::invalid_argument("make_direct_latitude_rule: order must be >= 2");
  std::vector<double> t, w;
  gauss_legendre(order, t, w);
  QuadratureRule rule;
  rule.kind = "latitude-x";
  rule.nodes.resize(t.size());
  rule.weights.resize(t.size());
  const double half = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    rule.nodes[i] = half * t[i];
    rule.weights[i] = half * w[i] * std::cos(rule.nodes[i]);
  }
  return rule;
}

QuadratureRule make_interval_rule(double lo, double hi, int order) {
  if (!(lo < hi)) throw std::invalid_argument("make_interval_rule: need lo < hi");
  if (order < 2) throw std::invalid_argument("make_interval_rule: order must be >= 2");
  std::vector<double> t, w;
  const int per_panel = 12;
  int panels = (order + per_panel - 1) / per_panel;
  gauss_legendre(per_panel, t, w);
  QuadratureRule rule;
  rule.kind = "interval";
  const double dx = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * dx;
    for (int i = 0; i < per_panel; ++i) {
      const double x = mid + 0.5 * dx * t[i];
      rule.nodes.push_back(x);
      rule.weights.push_back(0.5 * dx * w[i] * std::cos(x));
    }
  }
  return rule;
}

double inner_weighted(std::span<const double> f, std::span<const double> g,
                      const QuadratureRule& rule) {
  check_lengths(f, g, rule);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f[i] * g[i];
  return acc;
}

double inner_plain(std::span<const double> f, std::span<const double> g,
                   const QuadratureRule& rule) {
  check_lengths(f, g, rule);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    acc += rule.weights[i] / std::cos(rule.nodes[i]) * f[i] * g[i];
  return acc;
}

double integrate_weighted(std::span<const double> f, const QuadratureRule& rule) {
  if (f.size() != rule.size())
    throw std::invalid_argument("sample length does not match quadrature rule");
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f[i];
  return acc;
}

double integrate_plain(std::span<const double> f, const QuadratureRule& rule) {
  if (f.size() != rule.size())
    throw std::invalid_argument("sample length does not match quadrature rule");
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    acc += rule.weights[i] / std::cos(rule.nodes[i]) * f[i];
  return acc;
}

TimeGrid make_time_grid(double T, int steps, double clearance) {
  if (!(T > 0.0)) throw std::invalid_argument("make_time_grid: T must be positive");
  if (!(clearance > 0.0 && clearance < 0.5))
    throw std::invalid_argument("make_time_grid: clearance must lie in (0, 1/2)");
  return make_time_grid_on(clearance * T, (1.0 - clearance) * T, T, steps);
}

TimeGrid make_time_grid_on(double t0, double t1, double T, int steps) {
  if (!(T > 0.0)) throw std::invalid_argument("make_time_grid_on: T must be positive");
  if (steps < 1) throw std::invalid_argument("make_time_grid_on: steps must be >= 1");
  if (!(0.0 <= t0 && t0 < t1 && t1 <= T))
    throw std::invalid_argument("make_time_grid_on: need 0 <= t0 < t1 <= T");
  TimeGrid grid;
  grid.horizon = T;
  std::vector<double> t, w;
  const int per_panel = 8;
  gauss_legendre(per_panel, t, w);
  const double dt = (t1 - t0) / steps;
  grid.panels.resize(steps + 1);
  for (int p = 0; p <= steps; ++p) grid.panels[p] = t0 + p * dt;
  for (int p = 0; p < steps; ++p) {
    const double mid = t0 + (p + 0.5) * dt;
    for (int i = 0; i < per_panel; ++i) {
      grid.nodes.push_back(mid + 0.5 * dt * t[i]);
      grid.weights.push_back(0.5 * dt * w[i]);
    }
  }
  return grid;
}

TimeGrid make_control_grid(double T, int steps) { return make_time_grid_on(0.0, T, T, steps); }

double integrate_time(std::span<const double> values, const TimeGrid& grid) {
  if (values.size() != grid.nodes.size())
    throw std::invalid_argument("sample length does not match time grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += grid.weights[i] * values[i];
  return acc;
}

}  // namespace grushin
