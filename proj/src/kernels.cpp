#include "grushin/kernels.hpp"

#include <stdexcept>

namespace grushin {

Eigen::MatrixXd weighted_cross_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                    std::span<const double> weights, Exec exec) {
  if (A.rows() != B.rows() || A.rows() != static_cast<Eigen::Index>(weights.size()))
    throw std::invalid_argument("weighted_cross_gram: dimension mismatch");
  const int m = static_cast<int>(A.cols());
  const int p = static_cast<int>(B.cols());
  const int nk = static_cast<int>(weights.size());
  Eigen::MatrixXd G(m, p);
  for_each_index(
      m * p,
      [&](int idx) {
        const int i = idx / p;
        const int j = idx % p;
        double acc = 0.0;
        for (int k = 0; k < nk; ++k) acc += weights[k] * A(k, i) * B(k, j);
        G(i, j) = acc;
      },
      exec);
  return G;
}

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& samples, const QuadratureRule& rule,
                            Exec exec) {
  return weighted_cross_gram(samples, samples, rule.weights, exec);
}

}  // namespace grushin
