#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "grushin/legendre.hpp"

using namespace grushin;

TEST_CASE("eigenvalues l(l+1) - n^2") {
  CHECK(eigenvalue(0, 0) == 0);
  CHECK(eigenvalue(1, 0) == 2);
  CHECK(eigenvalue(1, 1) == 1);
  CHECK(eigenvalue(8, 3) == 63);
  for (int n = 1; n <= 10; ++n) CHECK(eigenvalue(n, n) == n);  // highest weight decays at rate n
  CHECK_THROWS_AS(eigenvalue(2, 3), std::invalid_argument);
}

TEST_CASE("normalized values at closed-form points") {
  // degree 1: sqrt(3/2) t and -sqrt(3)/2 sqrt(1-t^2)
  CHECK(normalized_legendre(1, 0, 1.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(normalized_legendre(1, 0, 0.5) == doctest::Approx(std::sqrt(1.5) * 0.5).epsilon(1e-14));
  CHECK(normalized_legendre(1, 1, 0.0) ==
        doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(normalized_legendre(0, 0, -0.3) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("recurrence column matches point evaluation and survives high degree") {
  auto col = normalized_legendre_column(4, 90, 0.37);
  for (int l : {4, 10, 40, 90})
    CHECK(col[l - 4] == doctest::Approx(normalized_legendre(l, 4, 0.37)).epsilon(1e-13));
  CHECK(std::isfinite(col.back()));
}

TEST_CASE("mode bases are orthonormal across frequencies") {
  for (int n : {0, 1, 5, 8}) {
    ModeBasis basis = make_mode_basis(n, n + 20);
    Eigen::MatrixXd G = gram_matrix(basis.samples, basis.rule);
    const double dev = (G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("negative frequency flips by the parity phase") {
  QuadratureRule rule = make_latitude_rule(64);
  auto plus = eigenfunction_vnl(5, 3, rule);
  auto minus = eigenfunction_vnl(5, -3, rule);
  for (std::size_t i = 0; i < rule.size(); ++i)
    CHECK(minus[i] == doctest::Approx(-plus[i]).epsilon(1e-14));
}

TEST_CASE("surface harmonic modulus is the latitude profile") {
  const double x = 0.4, y = 1.1;
  const double v = eigenfunction_vnl_at(6, 2, x);
  CHECK(std::abs(spherical_harmonic(6, 2, x, y)) ==
        doctest::Approx(std::abs(v) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("concentrating profile is unit norm and aligned with the top eigenfunction") {
  QuadratureRule rule = make_latitude_rule(256);
  for (int n : {3, 25, 120}) {
    auto w = concentrating_wn(n, rule);
    CHECK(inner_weighted(w, w, rule) == doctest::Approx(1.0).epsilon(1e-12));
    if (n <= 25) {
      auto v = eigenfunction_vnl(n, n, rule);
      CHECK(std::abs(inner_weighted(w, v, rule)) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("profiles vanish like sqrt(cos) at the poles for nonzero frequency") {
  const double a = endpoint_decay_check(5, 2, 0.05);
  const double b = endpoint_decay_check(5, 2, 0.01);
  CHECK(b < a);
}

TEST_CASE("default rule order grows with the truncation") {
  CHECK(default_rule_order(0, 10) == 64);
  CHECK(default_rule_order(8, 40) == 96);
}
