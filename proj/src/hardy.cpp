#include "grushin/hardy.hpp"

#include <cmath>
#include <stdexcept>

namespace grushin {

std::pair<double, double> hardy_pair(std::span<const double> w, const QuadratureRule& rule,
                                     const DiffOps& diff) {
  if (w.size() != rule.size()) throw std::invalid_argument("hardy_pair: length mismatch");
  auto dw = diff.derivative(w);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double c = std::cos(rule.nodes[i]);
    const double plain_w = rule.weights[i] / c;
    lhs += plain_w * w[i] * w[i] / (c * c);
    rhs += plain_w * dw[i] * dw[i];
  }
  return {lhs, 4.0 * rhs};
}

HalfLineSamples half_interval(const QuadratureRule& rule) {
  HalfLineSamples half;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (rule.nodes[i] > 0.0) {
      half.nodes.push_back(rule.nodes[i]);
      half.weights.push_back(rule.weights[i] / std::cos(rule.nodes[i]));
    }
  }
  return half;
}

std::vector<double> operator_S(std::span<const double> f, const HalfLineSamples& half) {
  if (f.size() != half.nodes.size()) throw std::invalid_argument("operator_S: length mismatch");
  const std::size_t m = f.size();
  std::vector<double> out(m);
  double tail = 0.0;
  // Accumulate the tail integral from the right; node i uses nodes > x_i.
  for (std::size_t k = m; k-- > 0;) {
    out[k] = tail / std::cos(half.nodes[k]);
    tail += half.weights[k] * f[k];
  }
  return out;
}

double hardy_constant_probe(const std::vector<std::vector<double>>& family,
                            const QuadratureRule& rule, const DiffOps& diff) {
  if (family.empty()) throw std::invalid_argument("hardy_constant_probe: empty family");
  double worst = 0.0;
  for (const auto& w : family) {
    auto [lhs, rhs] = hardy_pair(w, rule, diff);
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
  }
  return worst;
}

}  // namespace grushin
