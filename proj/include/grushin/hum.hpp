#pragma once

#include <Eigen/Dense>
#include <vector>

#include "grushin/observability.hpp"
#include "grushin/spectral.hpp"

namespace grushin {

/// Controllability Gramian of one mode: Duhamel pairing of the backward
/// adjoint flow with the region restriction. Closed form
/// G_{ll'} = S_{ll'} (1 - e^{-(lambda_l + lambda_l')T}) / (lambda_l +
/// lambda_l'), which coincides entrywise with the observability Gramian
/// because t -> T - t leaves the time factor invariant.
Eigen::MatrixXd hum_gramian(const ModeBasis& basis, const ControlRegion& region, double T,
                            Exec exec = Exec::Parallel);

struct ModeControlSolution {
  Eigen::VectorXcd p;               // terminal adjoint coefficients
  Eigen::VectorXcd predicted_final; // D f0 + G p = eps (G + eps I)^{-1} D f0
  Eigen::MatrixXcd panel_controls;  // (panel, coefficient), region-masked
  double projection_error = 0.0;    // sample-mask round trip, coefficient norm
};

/// Penalized HUM solve for one mode: (G + eps I) p = -D f0 with
/// D = diag(e^{-lambda T}). The control u(t) = Pi_omega sum_l p_l
/// e^{-lambda_l (T-t)} v_l is discretized as its exact average over each
/// time panel, so plugging it into duhamel_evolve reproduces
/// predicted_final up to roundoff.
ModeControlSolution solve_mode_control(const ModeState& f0n, const ControlRegion& region,
                                       double T, double epsilon, const TimeGrid& grid);

struct Assembled2DControl {
  Control2D control;
  double total_cost = 0.0;               // int int |u|^2 dsigma dt
  std::vector<double> per_mode_cost;     // index n; Parseval summands
  double max_projection_error = 0.0;
};

/// Stacks per-mode HUM controls into one real 2D control supported in the
/// region. Mode n = 0 carries weight 2 pi, modes n >= 1 carry 4 pi (their
/// conjugates are implied).
Assembled2DControl assemble_control_2d(const Field2D& f0, const ControlRegion& region, double T,
                                       double epsilon, const TimeGrid& grid,
                                       Exec exec = Exec::Parallel);

/// Real samples u(x_i, y_j) of one control panel with the region mask
/// applied pointwise; samples outside the region are exactly zero. Rows
/// follow the latitude nodes of the first mode basis.
Eigen::MatrixXd control_panel_samples(const Control2D& control, const ControlRegion& region,
                                      std::size_t panel, std::span<const double> y_grid);

}  // namespace grushin
