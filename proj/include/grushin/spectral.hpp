#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "grushin/differentiation.hpp"
#include "grushin/legendre.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

/// Spectral coefficients of a function of x in one frequency mode.
struct ModeState {
  std::shared_ptr<const ModeBasis> basis;
  Eigen::VectorXd coeffs;

  double norm() const { return coeffs.norm(); }
};

ModeState project_mode(std::span<const double> f, std::shared_ptr<const ModeBasis> basis);
std::vector<double> reconstruct(const ModeState& state);

/// Exact semigroup step: coeffs[l] *= exp(-lambda_{l,n} t). Requires t >= 0.
ModeState evolve_mode(const ModeState& state, double t);

/// L_n f = (1/cos x)(cos x f')' - n^2 tan^2 x f. Split route: spectral on the
/// basis span, finite differences on the (tiny) remainder; avoids one-sided
/// stencil noise dominating near the singular endpoints.
std::vector<double> apply_Ln(std::span<const double> f, const ModeBasis& basis,
                             const DiffOps& diff);
/// Pure finite-difference route for arbitrary samples.
std::vector<double> apply_Ln_fd(std::span<const double> f, int n, const QuadratureRule& rule,
                                const DiffOps& diff);

/// Dissipation rate check of one mode: returns (|g_n(T)|, e^{-|n|(T-t)} |g_n(t)|).
std::pair<double, double> dissipation_check(const ModeState& state0, double t, double T);

/// Truncated 2D field: complex Fourier-in-y coefficients for n = 0..N; the
/// n < 0 modes are implied by conjugate symmetry of a real field.
struct Field2D {
  int N = 0;
  int L = 0;
  std::vector<std::shared_ptr<const ModeBasis>> bases;  // index n
  std::vector<Eigen::VectorXcd> coeffs;                 // index n

  double squared_norm() const;
};

Field2D make_field(int N, int L, int rule_order = 0);

/// Real-field evaluation g(x_i, y_j) from the conjugate-symmetric expansion.
Eigen::MatrixXd evaluate_field(const Field2D& f, std::span<const double> y_grid);

/// n-th Fourier component of 2D samples g(x_i, y_j) on a uniform y grid:
/// g_n(x) = (1/2pi) int g(x, y) e^{-i n y} dy by the periodic trapezoid
/// average. Exact for y-band-limited data.
Eigen::VectorXcd fourier_component(const Eigen::MatrixXd& g2d, int n,
                                   std::span<const double> y_grid);

/// Piecewise-constant-in-time mode controls on the grid panels.
struct ModeControl {
  std::shared_ptr<const ModeBasis> basis;
  Eigen::MatrixXcd panel_coeffs;  // (panel, coefficient)
};

struct Control2D {
  TimeGrid grid;
  std::vector<ModeControl> modes;  // index n, may be shorter than N+1
};

/// Duhamel evolution to time T with exact exponential integration per panel.
Field2D duhamel_evolve(const Field2D& f0, const Control2D* control, double T,
                       const TimeGrid& grid);

/// Single-mode Duhamel with complex panel controls; building block of the
/// 2D version and of the control synthesis.
Eigen::VectorXcd duhamel_evolve_mode(const Eigen::VectorXcd& c0,
                                     std::span<const double> eigenvalues,
                                     const Eigen::MatrixXcd* panel_controls, double T,
                                     const TimeGrid& grid);

}  // namespace grushin
