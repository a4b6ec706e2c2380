#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace grushin {

/// Finite-difference weights on arbitrary nodes (Fornberg's algorithm).
/// Returns a (stencil size) x (maxDeriv + 1) matrix: column m holds the
/// weights of the m-th derivative at x0.
Eigen::MatrixXd fornberg_weights(double x0, std::span<const double> stencil, int max_deriv);

/// First/second derivative matrices built from sliding local stencils.
/// Used wherever samples have to be differentiated without a spectral
/// expansion (transformed operators, Hardy integrands, Carleman kernels).
class DiffOps {
 public:
  DiffOps() = default;
  explicit DiffOps(std::span<const double> nodes, int stencil = 7);

  const Eigen::MatrixXd& d1() const { return d1_; }
  const Eigen::MatrixXd& d2() const { return d2_; }

  std::vector<double> derivative(std::span<const double> f) const;
  std::vector<double> second_derivative(std::span<const double> f) const;

 private:
  Eigen::MatrixXd d1_, d2_;
};

}  // namespace grushin
