#include "grushin/differentiation.hpp"

#include <algorithm>
#include <stdexcept>

namespace grushin {

Eigen::MatrixXd fornberg_weights(double x0, std::span<const double> stencil, int max_deriv) {
  const int n = static_cast<int>(stencil.size()) - 1;
  if (n < max_deriv) throw std::invalid_argument("fornberg_weights: stencil too small");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, max_deriv + 1);
  double c1 = 1.0;
  double c4 = stencil[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, max_deriv);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = stencil[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = stencil[i] - stencil[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k)
        c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

DiffOps::DiffOps(std::span<const double> nodes, int stencil) {
  const int n = static_cast<int>(nodes.size());
  if (stencil < 3) throw std::invalid_argument("DiffOps: stencil must be >= 3");
  if (n < stencil) throw std::invalid_argument("DiffOps: not enough nodes for stencil");
  d1_ = Eigen::MatrixXd::Zero(n, n);
  d2_ = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int lo = std::clamp(i - stencil / 2, 0, n - stencil);
    auto local = nodes.subspan(lo, stencil);
    Eigen::MatrixXd w = fornberg_weights(nodes[i], local, 2);
    for (int j = 0; j < stencil; ++j) {
      d1_(i, lo + j) = w(j, 1);
      d2_(i, lo + j) = w(j, 2);
    }
  }
}

std::vector<double> DiffOps::derivative(std::span<const double> f) const {
  if (static_cast<int>(f.size()) != d1_.rows())
    throw std::invalid_argument("DiffOps::derivative: length mismatch");
  Eigen::Map<const Eigen::VectorXd> v(f.data(), f.size());
  Eigen::VectorXd r = d1_ * v;
  return {r.data(), r.data() + r.size()};
}

std::vector<double> DiffOps::second_derivative(std::span<const double> f) const {
  if (static_cast<int>(f.size()) != d2_.rows())
    throw std::invalid_argument("DiffOps::second_derivative: length mismatch");
  Eigen::Map<const Eigen::VectorXd> v(f.data(), f.size());
  Eigen::VectorXd r = d2_ * v;
  return {r.data(), r.data() + r.size()};
}

}  // namespace grushin
