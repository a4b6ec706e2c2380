#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "grushin/differentiation.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

/// Region tag of the spatial decomposition (-pi/2, pi/2) =
/// omega_bdy U omega_con U omega_deg.
enum class BetaRegion { Deg, Con, Bdy };

/// Spatial Carleman weight: closed forms near the degeneracy and near the
/// boundary, degree-9 Hermite blends (matching derivatives 0..4) on the two
/// connecting components.
class BetaWeight {
 public:
  double a = 0.0, b = 0.0, a_prime = 0.0, b_prime = 0.0;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;

  /// beta and derivatives up to order 4.
  double eval(double x, int deriv = 0) const;
  BetaRegion region(double x) const;

  // Grid-measured quantities, filled by build_beta.
  double eta1 = 0.0;      // min |beta'| on omega_bdy
  double eta2 = 0.0;      // min beta' on omega_deg
  double beta_min = 0.0;  // beta_*
  double beta_max = 0.0;  // beta^*

  // Hermite blend coefficients (monomials in x - x0, degree 9) per side.
  Eigen::VectorXd blend_right, blend_left;
  double blend_right_x0 = 0.0, blend_left_x0 = 0.0;

};

/// Builds the weight and verifies beta >= 1 on a grid (10^4 points by
/// default); throws with the violating x otherwise.
BetaWeight build_beta(double a, double b, double a_prime, double b_prime, double A1,
                      double A2, double A3, int grid = 10000);

struct WeightConstants {
  double A1, A2, A3;
};

/// Coarse grid search for default constants: among feasible candidates
/// (beta >= 1, eta1, eta2 > 0) picks the one with the shortest admissible
/// horizon 27 R0 beta_max / 2.
WeightConstants search_weight_constants(double a, double b, double a_prime, double b_prime);

struct ThetaVals {
  double th, d1, d2;
};

/// theta = 1/(t(T - t)) with the closed-form derivatives
/// theta' = (2t - T) theta^2, theta'' = 2 theta^2 (1 + (2t - T)^2 theta).
ThetaVals theta_eval(double t, double T);

struct ThetaReport {
  // Worst margins (bound - value); all must be >= 0.
  double margin_theta;        // 2^-4 T^4 theta^3 - theta
  double margin_d1;           // 2^-2 T^3 theta^3 - |theta'|
  double margin_theta_d1;     // T theta^3 - |theta theta'|
  double margin_d2;           // (5/2) T^2 theta^3 - |theta''|
  bool all_hold() const;
};

ThetaReport theta_inequalities_check(double T, int grid_points);

double phi_eval(double t, double x, double s, double T, const BetaWeight& weight);

struct CarlemanParams {
  double s = 0.0;
  double T = 0.0;
  int n = 0;
  double s_factor = 1.0;
};

/// s = s_factor * R0 * max(T + T^2, T^2 n).
CarlemanParams make_params(double s_factor, double r0, double T, int n);

/// Constants from the admissibility analysis. s1 omits the undefined
/// sqrt(A5 C3 / 32) term; T* is computed from beta_max (and the beta_min
/// variant is reported alongside).
struct AdmissibilityConstants {
  double C1, C2, C4, C5, C6, C7;
  double C8, C9, C10, C11, C12;
  double s1, s2, R0;
  double T_star;      // 27 R0 beta_max / 2
  double T_star_min;  // 27 R0 beta_min / 2, reported for comparison
};

AdmissibilityConstants admissibility_constants(const BetaWeight& weight);

/// One spectral adjoint solution g(t, x) = e^{-lambda t} w(x) of the
/// transformed mode equation (P_n g = 0 up to discretization).
struct SpectralSolution {
  std::vector<double> w;  // samples at the rule nodes
  double lambda = 0.0;
  int n = 1;
};

/// Max interior-grid residual of P+ z + P- z = e^{-phi} P_n g, normalized
/// by the largest of the three terms.
double split_identity_check(const SpectralSolution& sol, const CarlemanParams& params,
                            const BetaWeight& weight, const QuadratureRule& rule,
                            const DiffOps& diff, const TimeGrid& grid);

/// Pointwise kernel value K_deg / K_bdy / K_con by region of x.
double kernel_eval(double t, double x, double z, double dz, const CarlemanParams& params,
                   const BetaWeight& weight);

struct KernelBoundsReport {
  double margin_deg;  // int K_deg - int (4 s th |dz|^2 + eta2^2 s^3 th^3 |z|^2)
  double margin_bdy;  // int K_bdy - int (2 s th (|dz|^2+|z|^2) + eta1^2/2 s^3 th^3 |z|^2)
  double margin_con;  // int (C9 s th |dz|^2 + C12 s^3 th^3 |z|^2) - int |K_con|
  bool all_nonnegative() const;
};

KernelBoundsReport kernel_bounds_check(const SpectralSolution& sol, const CarlemanParams& params,
                                       const BetaWeight& weight, const QuadratureRule& rule,
                                       const DiffOps& diff, const TimeGrid& grid);

struct ControlRegion;  // defined in observability.hpp

/// Ratio of the omega-restricted right side of the Carleman inequality to
/// its left side (with R1 = 1), per solution. P_n g = 0 along the family,
/// so the second right-hand term drops.
std::vector<double> carleman_diagnostic(const std::vector<SpectralSolution>& solutions,
                                        double s_factor, double T, const BetaWeight& weight,
                                        double region_a, double region_b,
                                        const QuadratureRule& rule, const DiffOps& diff,
                                        const TimeGrid& grid);

}  // namespace grushin
