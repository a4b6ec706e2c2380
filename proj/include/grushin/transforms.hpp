#pragma once

#include <span>
#include <vector>

#include "grushin/differentiation.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

/// Singular potential of the transformed operator M_n:
/// q_n(x) = (n^2 - 1/4) tan^2 x - 1/2.
struct PotentialQn {
  int n;
  double operator()(double x) const;
  double derivative(double x) const;
};

/// (U v)(x) = sqrt(cos x) v(x); unitary from the cos x weighted space onto
/// plain L^2(-pi/2, pi/2).
std::vector<double> map_U(std::span<const double> v, const QuadratureRule& rule);
std::vector<double> map_U_adjoint(std::span<const double> w, const QuadratureRule& rule);

/// (V v)(x) = v(arcsin x): relabeling of samples onto the image node set
/// sin(latitude nodes) -- no interpolation, unitarity is exact sample-wise.
std::vector<double> map_V(std::span<const double> v);
std::vector<double> map_V_adjoint(std::span<const double> w);
std::vector<double> mapped_nodes_V(const QuadratureRule& rule);

/// M_0 w = ((1 - x^2) w')' on the mapped (-1, 1) nodes.
std::vector<double> apply_M0(std::span<const double> w, std::span<const double> t_nodes,
                             const DiffOps& diff);

/// M_n w = w'' - q_n(x) w, n >= 1.
std::vector<double> apply_Mn(std::span<const double> w, int n, const QuadratureRule& rule,
                             const DiffOps& diff);

}  // namespace grushin
