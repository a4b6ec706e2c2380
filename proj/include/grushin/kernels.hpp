#pragma once

#include <Eigen/Dense>
#include <span>

#include "grushin/quadrature.hpp"

namespace grushin {

/// Execution policy for the data-parallel kernels. Parallel uses OpenMP when
/// compiled in; Serial is the reference path kept for testing and benchmarks.
enum class Exec { Serial, Parallel };

/// Gram matrix G(i,j) = sum_k w_k A(k,i) B(k,j). Columns of A and B are
/// function samples at the rule nodes. Each entry is accumulated in a fixed
/// node order, so Serial and Parallel results are bitwise identical.
Eigen::MatrixXd weighted_cross_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                    std::span<const double> weights,
                                    Exec exec = Exec::Parallel);

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& samples, const QuadratureRule& rule,
                            Exec exec = Exec::Parallel);

/// Parallel map over [0, n): each index is computed independently.
template <typename F>
void for_each_index(int n, F&& f, Exec exec = Exec::Parallel) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) f(i);
  } else {
    for (int i = 0; i < n; ++i) f(i);
  }
}

}  // namespace grushin
