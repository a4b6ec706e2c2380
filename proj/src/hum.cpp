#include "grushin/hum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grushin {

namespace {

// int_{t0}^{t1} e^{-mu (T - t)} dt, written in the backward variable so the
// exponentials never exceed 1 on [0, T].
double backward_panel_integral(double mu, double T, double t0, double t1) {
  if (mu == 0.0) return t1 - t0;
  return (std::exp(-mu * (T - t1)) - std::exp(-mu * (T - t0))) / mu;
}

Eigen::VectorXcd solve_real_spd(const Eigen::LDLT<Eigen::MatrixXd>& ldlt,
                                const Eigen::VectorXcd& rhs) {
  Eigen::VectorXd re = ldlt.solve(rhs.real());
  Eigen::VectorXd im = ldlt.solve(rhs.imag());
  return re + std::complex<double>(0.0, 1.0) * im;
}

}  // namespace

Eigen::MatrixXd hum_gramian(const ModeBasis& basis, const ControlRegion& region, double T,
                            Exec exec) {
  if (!(T > 0.0)) throw std::invalid_argument("hum_gramian: T must be positive");
  Eigen::MatrixXd G = spatial_overlap_matrix(basis, region, exec);
  const int count = basis.count();
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      // Pairing of two backward adjoint flows e^{-lambda (T - t)}; the
      // substitution u = T - t gives int_0^T e^{-(mu) u} du.
      const double mu = basis.eigenvalues[i] + basis.eigenvalues[j];
      G(i, j) *= backward_panel_integral(mu, T, 0.0, T);
    }
  }
  return G;
}

ModeControlSolution solve_mode_control(const ModeState& f0n, const ControlRegion& region,
                                       double T, double epsilon, const TimeGrid& grid) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("solve_mode_control: epsilon must be > 0");
  const ModeBasis& basis = *f0n.basis;
  const int count = basis.count();
  const Eigen::MatrixXd G = hum_gramian(basis, region, T, Exec::Serial);
  Eigen::VectorXcd df0(count);
  for (int i = 0; i < count; ++i)
    df0[i] = f0n.coeffs[i] * std::exp(-basis.eigenvalues[i] * T);

  Eigen::MatrixXd A = G;
  A.diagonal().array() += epsilon;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("solve_mode_control: penalized Gramian factorization failed");

  ModeControlSolution out;
  out.p = solve_real_spd(ldlt, -df0);
  out.predicted_final = df0 + G * out.p;

  // Control coefficients u_l(t) = sum_l' S_{ll'} p_l' e^{-lambda_l'(T-t)}.
  // Each panel stores the propagator-weighted average of u_l, which keeps
  // the discrete Duhamel sum equal to the continuous integral.
  const Eigen::MatrixXd S = spatial_overlap_matrix(basis, region, Exec::Serial);
  const std::size_t panels = grid.panel_count();
  out.panel_controls.resize(panels, count);
  for (std::size_t p = 0; p < panels; ++p) {
    const double t0 = grid.panels[p];
    const double t1 = grid.panels[p + 1];
    for (int l = 0; l < count; ++l) {
      const double denom = backward_panel_integral(basis.eigenvalues[l], T, t0, t1);
      std::complex<double> numer = 0.0;
      for (int j = 0; j < count; ++j) {
        const double mu = basis.eigenvalues[l] + basis.eigenvalues[j];
        numer += S(l, j) * out.p[j] * backward_panel_integral(mu, T, t0, t1);
      }
      out.panel_controls(p, l) = denom > 0.0 ? numer / denom : 0.0;
    }
  }

  // Round-trip error of the sample-level region mask against the exact
  // crown-rule projection, measured on the terminal adjoint profile.
  Eigen::VectorXcd exact = S * out.p;
  Eigen::VectorXcd masked = Eigen::VectorXcd::Zero(count);
  for (std::size_t i = 0; i < basis.rule.size(); ++i) {
    if (!region.contains(basis.rule.nodes[i])) continue;
    std::complex<double> phi = 0.0;
    for (int j = 0; j < count; ++j) phi += out.p[j] * basis.samples(i, j);
    for (int l = 0; l < count; ++l) masked[l] += basis.rule.weights[i] * phi * basis.samples(i, l);
  }
  const double scale = std::max(exact.norm(), 1e-300);
  out.projection_error = (exact - masked).norm() / scale;
  return out;
}

Assembled2DControl assemble_control_2d(const Field2D& f0, const ControlRegion& region, double T,
                                       double epsilon, const TimeGrid& grid, Exec exec) {
  Assembled2DControl out;
  out.control.grid = grid;
  out.control.modes.resize(f0.N + 1);
  out.per_mode_cost.assign(f0.N + 1, 0.0);
  std::vector<double> proj_err(f0.N + 1, 0.0);
  for_each_index(
      f0.N + 1,
      [&](int n) {
        ModeState state;
        state.basis = f0.bases[n];
        // Linear solve handles real and imaginary parts separately.
        ModeState re = state, im = state;
        re.coeffs = f0.coeffs[n].real();
        im.coeffs = f0.coeffs[n].imag();
        auto sol_re = solve_mode_control(re, region, T, epsilon, grid);
        auto sol_im = solve_mode_control(im, region, T, epsilon, grid);
        ModeControl mc;
        mc.basis = f0.bases[n];
        mc.panel_coeffs =
            sol_re.panel_controls + std::complex<double>(0.0, 1.0) * sol_im.panel_controls;
        double cost = 0.0;
        for (std::size_t p = 0; p < grid.panel_count(); ++p) {
          const double d = grid.panels[p + 1] - grid.panels[p];
          cost += d * mc.panel_coeffs.row(p).squaredNorm();
        }
        const double weight = n == 0 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
        out.per_mode_cost[n] = weight * cost;
        proj_err[n] = std::max(sol_re.projection_error, sol_im.projection_error);
        out.control.modes[n] = std::move(mc);
      },
      exec);
  out.total_cost = 0.0;
  for (double c : out.per_mode_cost) out.total_cost += c;
  out.max_projection_error = *std::max_element(proj_err.begin(), proj_err.end());
  return out;
}

Eigen::MatrixXd control_panel_samples(const Control2D& control, const ControlRegion& region,
                                      std::size_t panel, std::span<const double> y_grid) {
  if (control.modes.empty()) throw std::invalid_argument("control_panel_samples: no modes");
  const QuadratureRule& rule = control.modes[0].basis->rule;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rule.size(), y_grid.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (!region.contains(rule.nodes[i])) continue;
    for (std::size_t n = 0; n < control.modes.size(); ++n) {
      const auto& mc = control.modes[n];
      if (mc.panel_coeffs.size() == 0) continue;
      std::complex<double> un = 0.0;
      for (int j = 0; j < mc.panel_coeffs.cols(); ++j)
        un += mc.panel_coeffs(static_cast<Eigen::Index>(panel), j) * mc.basis->samples(i, j);
      for (std::size_t k = 0; k < y_grid.size(); ++k) {
        const std::complex<double> phase(std::cos(n * y_grid[k]), std::sin(n * y_grid[k]));
        const std::complex<double> term = un * phase;
        out(i, k) += n == 0 ? term.real() : 2.0 * term.real();
      }
    }
  }
  return out;
}

}  // namespace grushin
