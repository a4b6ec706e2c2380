#include "grushin/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace grushin {

double PotentialQn::operator()(double x) const {
  const double tx = std::tan(x);
  return (static_cast<double>(n) * n - 0.25) * tx * tx - 0.5;
}

double PotentialQn::derivative(double x) const {
  const double tx = std::tan(x);
  const double cx = std::cos(x);
  return (static_cast<double>(n) * n - 0.25) * 2.0 * tx / (cx * cx);
}

std::vector<double> map_U(std::span<const double> v, const QuadratureRule& rule) {
  if (v.size() != rule.size()) throw std::invalid_argument("map_U: length mismatch");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::sqrt(std::cos(rule.nodes[i])) * v[i];
  return out;
}

std::vector<double> map_U_adjoint(std::span<const double> w, const QuadratureRule& rule) {
  if (w.size() != rule.size()) throw std::invalid_argument("map_U_adjoint: length mismatch");
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] / std::sqrt(std::cos(rule.nodes[i]));
  return out;
}

std::vector<double> map_V(std::span<const double> v) { return {v.begin(), v.end()}; }
std::vector<double> map_V_adjoint(std::span<const double> w) { return {w.begin(), w.end()}; }

std::vector<double> mapped_nodes_V(const QuadratureRule& rule) {
  std::vector<double> t(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) t[i] = std::sin(rule.nodes[i]);
  return t;
}

std::vector<double> apply_M0(std::span<const double> w, std::span<const double> t_nodes,
                             const DiffOps& diff) {
  if (w.size() != t_nodes.size()) throw std::invalid_argument("apply_M0: length mismatch");
  auto d1 = diff.derivative(w);
  auto d2 = diff.second_derivative(w);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = t_nodes[i];
    out[i] = (1.0 - t * t) * d2[i] - 2.0 * t * d1[i];
  }
  return out;
}

std::vector<double> apply_Mn(std::span<const double> w, int n, const QuadratureRule& rule,
                             const DiffOps& diff) {
  if (n == 0) throw std::invalid_argument("apply_Mn: use apply_M0 for n = 0");
  if (w.size() != rule.size()) throw std::invalid_argument("apply_Mn: length mismatch");
  auto d2 = diff.second_derivative(w);
  const PotentialQn q{n};
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = d2[i] - q(rule.nodes[i]) * w[i];
  return out;
}

}  // namespace grushin
