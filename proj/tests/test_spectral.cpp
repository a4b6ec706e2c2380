#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "grushin/spectral.hpp"

using namespace grushin;

namespace {
std::shared_ptr<const ModeBasis> shared_basis(int n, int L) {
  return std::make_shared<const ModeBasis>(make_mode_basis(n, L));
}
}  // namespace

TEST_CASE("projection and reconstruction round-trip inside the span") {
  auto basis = shared_basis(2, 12);
  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(basis->count(), -1.0, 1.0);
  ModeState state{basis, c};
  auto samples = reconstruct(state);
  ModeState back = project_mode(samples, basis);
  CHECK((back.coeffs - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("semigroup step multiplies each coefficient by its decay factor") {
  auto basis = shared_basis(1, 6);
  Eigen::VectorXd c = Eigen::VectorXd::Ones(basis->count());
  ModeState state{basis, c};
  ModeState evolved = evolve_mode(state, 0.7);
  for (int j = 0; j < c.size(); ++j)
    CHECK(evolved.coeffs[j] ==
          doctest::Approx(std::exp(-basis->eigenvalues[j] * 0.7)).epsilon(1e-14));
  CHECK_THROWS_AS(evolve_mode(state, -0.1), std::invalid_argument);
}

TEST_CASE("operator application reproduces the eigen-relation at high degree") {
  for (auto [n, l] : std::vector<std::pair<int, int>>{{0, 1}, {3, 8}, {8, 40}, {5, 33}}) {
    ModeBasis basis = make_mode_basis(n, std::max(40, l));
    DiffOps diff(basis.rule.nodes);
    auto v = eigenfunction_vnl(l, n, basis.rule);
    auto lv = apply_Ln(v, basis, diff);
    const double lambda = static_cast<double>(eigenvalue(l, n));
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      err = std::max(err, std::abs(lv[i] + lambda * v[i]));
      scale = std::max(scale, std::abs(lambda * v[i]));
    }
    CHECK(err / std::max(scale, 1.0) < 1e-6);
  }
}

TEST_CASE("decay rate bound holds with equality on the highest-weight state") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto basis = shared_basis(3, 12);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd c(basis->count());
    for (int j = 0; j < c.size(); ++j) c[j] = dist(rng);
    ModeState state{basis, c};
    for (int k = 0; k < 20; ++k) {
      const double t = 0.05 * (k + 1);
      const double T = t + 0.07 * (k + 1);
      auto [lhs, rhs] = dissipation_check(state, t, T);
      CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
  }
  // pure highest-weight state: lambda_{n,n} = n, so the bound is an equality
  Eigen::VectorXd pure = Eigen::VectorXd::Zero(basis->count());
  pure[0] = 1.0;
  auto [lhs, rhs] = dissipation_check(ModeState{basis, pure}, 0.3, 1.1);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("two-dimensional norm agrees with brute-force surface quadrature") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field2D f = make_field(3, 8);
  for (int n = 0; n <= f.N; ++n)
    for (int j = 0; j < f.coeffs[n].size(); ++j)
      f.coeffs[n][j] = std::complex<double>(dist(rng), n == 0 ? 0.0 : dist(rng));
  const int ny = 64;
  std::vector<double> y(ny);
  for (int k = 0; k < ny; ++k) y[k] = 2.0 * std::numbers::pi * k / ny;
  Eigen::MatrixXd g = evaluate_field(f, y);
  const QuadratureRule& rule = f.bases[0]->rule;
  double brute = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    for (int k = 0; k < ny; ++k)
      brute += rule.weights[i] * g(i, k) * g(i, k) * (2.0 * std::numbers::pi / ny);
  CHECK(brute == doctest::Approx(f.squared_norm()).epsilon(1e-10));
}

TEST_CASE("longitudinal component extraction inverts the expansion") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field2D f = make_field(2, 6);
  for (int n = 0; n <= f.N; ++n)
    for (int j = 0; j < f.coeffs[n].size(); ++j)
      f.coeffs[n][j] = std::complex<double>(dist(rng), n == 0 ? 0.0 : dist(rng));
  const int ny = 32;
  std::vector<double> y(ny);
  for (int k = 0; k < ny; ++k) y[k] = 2.0 * std::numbers::pi * k / ny;
  Eigen::MatrixXd g = evaluate_field(f, y);
  for (int n = 0; n <= 2; ++n) {
    Eigen::VectorXcd gn = fourier_component(g, n, y);
    Eigen::VectorXcd expected = f.bases[n]->samples * f.coeffs[n];
    CHECK((gn - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("free evolution equals the closed-form decay and controls add linearly") {
  auto basis = shared_basis(0, 4);
  TimeGrid grid = make_control_grid(1.0, 5);
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Ones(basis->count());
  Eigen::VectorXcd freely =
      duhamel_evolve_mode(c0, basis->eigenvalues, nullptr, 1.0, grid);
  for (int j = 0; j < c0.size(); ++j)
    CHECK(std::abs(freely[j] - std::exp(-basis->eigenvalues[j] * 1.0)) < 1e-14);
  // constant unit control on the lambda = 0 coefficient integrates to T
  Eigen::MatrixXcd panels = Eigen::MatrixXcd::Zero(grid.panel_count(), basis->count());
  panels.col(0).setOnes();
  Eigen::VectorXcd driven =
      duhamel_evolve_mode(c0, basis->eigenvalues, &panels, 1.0, grid);
  CHECK(std::abs(driven[0] - (c0[0] + 1.0)) < 1e-14);
}
