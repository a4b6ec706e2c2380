#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <random>

#include "grushin/kernels.hpp"
#include "grushin/legendre.hpp"

using namespace grushin;

TEST_CASE("serial and parallel cross-gram agree bitwise") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int nodes = 257, cols = 23;
  Eigen::MatrixXd A(nodes, cols), B(nodes, cols);
  std::vector<double> w(nodes);
  for (int i = 0; i < nodes; ++i) {
    w[i] = std::abs(dist(rng)) + 0.01;
    for (int j = 0; j < cols; ++j) {
      A(i, j) = dist(rng);
      B(i, j) = dist(rng);
    }
  }
  Eigen::MatrixXd gs = weighted_cross_gram(A, B, w, Exec::Serial);
  Eigen::MatrixXd gp = weighted_cross_gram(A, B, w, Exec::Parallel);
  CHECK(gs.cwiseEqual(gp).all());
}

TEST_CASE("gram matrix of an orthonormal family is the identity") {
  ModeBasis basis = make_mode_basis(2, 14);
  Eigen::MatrixXd G = gram_matrix(basis.samples, basis.rule);
  const double dev = (G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
  CHECK(dev < 1e-12);
}

TEST_CASE("parallel basis construction matches the serial reference bitwise") {
  QuadratureRule rule = make_latitude_rule(96);
  ModeBasis s = make_mode_basis(3, 30, rule, Exec::Serial);
  ModeBasis p = make_mode_basis(3, 30, rule, Exec::Parallel);
  CHECK(s.samples.cwiseEqual(p.samples).all());
}

TEST_CASE("for_each_index touches every index exactly once") {
  const int n = 1000;
  std::vector<std::atomic<int>> hits(n);
  for_each_index(n, [&](int i) { hits[i]++; }, Exec::Parallel);
  for (int i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
}
