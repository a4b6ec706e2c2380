#pragma once

#include <span>
#include <vector>

#include "grushin/differentiation.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

/// Both sides of the Hardy-Poincare inequality
/// int |w|^2 / cos^2 x dx <= 4 int |w'|^2 dx
/// for a function vanishing at +-pi/2 (endpoints are never sampled).
std::pair<double, double> hardy_pair(std::span<const double> w, const QuadratureRule& rule,
                                     const DiffOps& diff);

/// (S f)(x) = (1/cos x) * int_x^{pi/2} f(t) dt on the positive half nodes of
/// the rule; the tail integral uses the rule restricted to nodes > x.
struct HalfLineSamples {
  std::vector<double> nodes;    // positive rule nodes
  std::vector<double> weights;  // plain (unweighted) quadrature weights
};

HalfLineSamples half_interval(const QuadratureRule& rule);
std::vector<double> operator_S(std::span<const double> f, const HalfLineSamples& half);

/// max over the family of lhs/rhs of hardy_pair; <= 1 when the inequality
/// holds throughout.
double hardy_constant_probe(const std::vector<std::vector<double>>& family,
                            const QuadratureRule& rule, const DiffOps& diff);

}  // namespace grushin
