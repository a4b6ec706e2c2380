#pragma once

#include <span>
#include <string>
#include <vector>

namespace grushin {

/// Quadrature rule on the open latitude interval (-pi/2, pi/2).
///
/// Weights carry the cos x factor of the measure dsigma = cos x dx dy, so
/// applying the rule to samples of f approximates \int f(x) cos x dx.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::string kind;

  std::size_t size() const { return nodes.size(); }
};

/// Composite time quadrature strictly inside (0, T). Endpoint nodes are
/// forbidden: the temporal weight 1/(t(T-t)) blows up there.
struct TimeGrid {
  double horizon = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Panel boundaries (steps + 1 entries); piecewise-constant controls live
  /// on these panels.
  std::vector<double> panels;

  std::size_t panel_count() const { return panels.empty() ? 0 : panels.size() - 1; }
};

/// Gauss-Legendre nodes and weights on (-1, 1).
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss rule for \int f(x) cos x dx over (-pi/2, pi/2), built through the
/// substitution t = sin x. Exact for polynomials in sin x of degree
/// <= 2*order - 1. Requires order >= 2.
QuadratureRule make_latitude_rule(int order);

/// Gauss rule placed directly in x over (-pi/2, pi/2), cos x folded into the
/// weights. Unlike the sin-substituted rule its plain integrals stay
/// spectrally accurate for smooth integrands that are not polynomial in
/// sin x (the substitution turns those into endpoint square roots).
QuadratureRule make_direct_latitude_rule(int order);

/// Composite Gauss rule on (lo, hi) with the cos x factor folded into the
/// weights; used for integrals clipped to control-region crowns.
QuadratureRule make_interval_rule(double lo, double hi, int order);

double inner_weighted(std::span<const double> f, std::span<const double> g,
                      const QuadratureRule& rule);

/// Unweighted L^2(-pi/2, pi/2) product; divides the cos-weighted weights by
/// cos(node). Nodes never touch +-pi/2, so this is well defined.
double inner_plain(std::span<const double> f, std::span<const double> g,
                   const QuadratureRule& rule);

double integrate_weighted(std::span<const double> f, const QuadratureRule& rule);
double integrate_plain(std::span<const double> f, const QuadratureRule& rule);

TimeGrid make_time_grid(double T, int steps, double clearance = 1e-3);
/// Composite Gauss grid on a caller-supplied subinterval [t0, t1] of [0, T].
/// Quadrature nodes stay strictly inside the panels, so t0 = 0 and t1 = T
/// are allowed; that full-cover variant is what piecewise controls use.
TimeGrid make_time_grid_on(double t0, double t1, double T, int steps);
/// Full-cover grid [0, T]; the panel partition for control synthesis.
TimeGrid make_control_grid(double T, int steps);

double integrate_time(std::span<const double> values, const TimeGrid& grid);

}  // namespace grushin
