#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "grushin/carleman.hpp"
#include "grushin/kernels.hpp"
#include "grushin/legendre.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

/// Control region omega_{a,b} = (-b, -a) U (a, b). The one-crown variant
/// (a, b) is available behind a flag; the default matches the two-crown
/// region used throughout the energy estimates.
struct ControlRegion {
  double a = 0.0;
  double b = 0.0;
  bool both_crowns = true;

  bool contains(double x) const;
  double alpha() const;  // sin a
  double beta() const;   // sin b
};

ControlRegion make_region(double a, double b, bool both_crowns = true);

/// Quadrature rule clipped to the region crowns, cos-weighted.
QuadratureRule region_rule(const ControlRegion& region, int order_per_crown = 64);

/// S_{ll'} = int_omega v_{n,l} v_{n,l'} cos x dx, symmetric PSD.
Eigen::MatrixXd spatial_overlap_matrix(const ModeBasis& basis, const ControlRegion& region,
                                       Exec exec = Exec::Parallel);

/// M_{ll'} = S_{ll'} (1 - e^{-(l_sum)T}) / l_sum with l_sum = lambda_l +
/// lambda_l', and the analytic limit T when l_sum = 0.
Eigen::MatrixXd observability_gramian(const ModeBasis& basis, const ControlRegion& region,
                                      double T, Exec exec = Exec::Parallel);

struct ObsConstant {
  double value = 0.0;    // smallest C with |g(T)|^2 <= C * observed energy
  int effective_dim = 0; // directions whose terminal weight stayed above 1e-300
  double ridge = 0.0;    // regularization added to the Gramian diagonal
};

/// Largest terminal-energy to observed-energy quotient over the truncated
/// span. weighted_lhs selects the cos x terminal norm (default); the
/// unweighted variant replaces the diagonal numerator with the plain Gram
/// matrix of the eigenfunctions.
ObsConstant obs_constant_mode(const ModeBasis& basis, const ControlRegion& region, double T,
                              bool weighted_lhs = true);

/// log of the ratio
///   int_0^T int_omega |g_n|^2 cos dx dt / int |g_n(T)|^2 cos dx
/// along the concentrating family g_n = e^{-nt} w_n; closed-form time
/// integral, crown quadrature in space. Requires n >= 1.
double mintime_log_ratio(int n, double T, const ControlRegion& region);
double mintime_ratio(int n, double T, const ControlRegion& region);

/// Both sides, in log space, of the factorial bound
///   e^{2nT}/(2n) int_a^b w_n^2 cos dx
///     <= e^{2n(T + log cos a)} (2n+1)!/(n 2^{2n+1} (n!)^2) (b-a) cos a,
/// single-crown convention. Second member of the pair is the bound.
std::pair<double, double> mintime_bound_logs(int n, double T, const ControlRegion& region);

/// log of the large-n envelope (b-a) (cos a / (2 sqrt(pi))) (2n+1)/n^{3/2}
/// of the bound's n-dependent factor.
double mintime_stirling_log(int n, const ControlRegion& region);

struct MinTimeBound {
  double value = 0.0;  // log(1/cos a)
  double alt = 0.0;    // log(1/sqrt(1 - sin^2 a)), agrees to 1e-15
};

MinTimeBound mintime_lower_bound(const ControlRegion& region);

struct ObservabilityRow {
  int n = 0;
  double constant = 0.0;
  int effective_dim = 0;
  double log_ratio = 0.0;  // NaN for n = 0
};

struct ObservabilityReport {
  double T = 0.0;
  int L = 0;
  ControlRegion region;
  std::vector<ObservabilityRow> rows;
  double max_constant = 0.0;
  double threshold = 0.0;  // log(1/cos a)
  std::string trend;       // "bounded" or "growing" across the scanned n
  std::string disclaimer;  // truncation caveat, always present
};

/// C_n(T) for n = 0..Nmax at truncation L; parallel over n, rows emitted in
/// ascending n.
ObservabilityReport uniform_scan(const ControlRegion& region, double T, int Nmax, int L,
                                 Exec exec = Exec::Parallel);

struct DissipationWindow {
  double s = 0.0;        // R0 (T + T^2) below the crossover, R0 T^2 n above
  bool high_frequency = false;  // n >= 1 + 1/T
  double lhs_exponent = 0.0;    // -2nT/3
  double rhs_exponent = 0.0;    // (9/T^2) s beta_max
  double margin = 0.0;          // lhs + rhs; <= 0 iff decay wins
};

/// Mid-window bound obtained by integrating over (T/3, 2T/3), where
/// 4/T^2 <= theta <= 9/(2T^2). For n above the crossover the margin is
/// (2n/3)(T_star - T), so it vanishes exactly at T = T_star.
DissipationWindow dissipation_window_bound(int n, double T, double r0, const BetaWeight& weight);

}  // namespace grushin
