#include "grushin/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grushin {

namespace {

// (1 - e^{-lambda d}) / lambda with the analytic limit d at lambda = 0.
double panel_gain(double lambda, double d) {
  if (lambda == 0.0) return d;
  return -std::expm1(-lambda * d) / lambda;
}

}  // namespace

ModeState project_mode(std::span<const double> f, std::shared_ptr<const ModeBasis> basis) {
  if (!basis) throw std::invalid_argument("project_mode: null basis");
  if (static_cast<Eigen::Index>(f.size()) != basis->samples.rows())
    throw std::invalid_argument("project_mode: samples do not match basis nodes");
  ModeState state;
  state.basis = basis;
  Eigen::VectorXd wf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) wf[i] = basis->rule.weights[i] * f[i];
  state.coeffs = basis->samples.transpose() * wf;
  return state;
}

std::vector<double> reconstruct(const ModeState& state) {
  Eigen::VectorXd s = state.basis->samples * state.coeffs;
  return {s.data(), s.data() + s.size()};
}

ModeState evolve_mode(const ModeState& state, double t) {
  if (t < 0.0) throw std::invalid_argument("evolve_mode: t must be >= 0");
  ModeState out = state;
  for (int j = 0; j < out.coeffs.size(); ++j)
    out.coeffs[j] *= std::exp(-state.basis->eigenvalues[j] * t);
  return out;
}

std::vector<double> apply_Ln_fd(std::span<const double> f, int n, const QuadratureRule& rule,
                                const DiffOps& diff) {
  auto d1 = diff.derivative(f);
  auto d2 = diff.second_derivative(f);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double tx = std::tan(rule.nodes[i]);
    out[i] = d2[i] - tx * d1[i] - static_cast<double>(n) * n * tx * tx * f[i];
  }
  return out;
}

std::vector<double> apply_Ln(std::span<const double> f, const ModeBasis& basis,
                             const DiffOps& diff) {
  if (static_cast<Eigen::Index>(f.size()) != basis.samples.rows())
    throw std::invalid_argument("apply_Ln: samples do not match basis nodes");
  Eigen::VectorXd wf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) wf[i] = basis.rule.weights[i] * f[i];
  Eigen::VectorXd c = basis.samples.transpose() * wf;
  Eigen::VectorXd spectral = Eigen::VectorXd::Zero(f.size());
  Eigen::VectorXd scaled = c;
  for (int j = 0; j < c.size(); ++j) scaled[j] = -basis.eigenvalues[j] * c[j];
  spectral = basis.samples * scaled;
  // FD fallback on the out-of-span remainder.
  Eigen::VectorXd recon = basis.samples * c;
  std::vector<double> rem(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) rem[i] = f[i] - recon[i];
  auto rem_l = apply_Ln_fd(rem, basis.n, basis.rule, diff);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = spectral[i] + rem_l[i];
  return out;
}

std::pair<double, double> dissipation_check(const ModeState& state0, double t, double T) {
  if (!(0.0 < t && t < T)) throw std::invalid_argument("dissipation_check: need 0 < t < T");
  const double lhs = evolve_mode(state0, T).norm();
  const double rhs = std::exp(-std::abs(state0.basis->n) * (T - t)) * evolve_mode(state0, t).norm();
  return {lhs, rhs};
}

double Field2D::squared_norm() const {
  double acc = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double factor = (n == 0) ? 1.0 : 2.0;
    acc += factor * coeffs[n].squaredNorm();
  }
  return 2.0 * std::numbers::pi * acc;
}

Field2D make_field(int N, int L, int rule_order) {
  if (N < 0 || L < N) throw std::invalid_argument("make_field: need 0 <= N <= L");
  Field2D f;
  f.N = N;
  f.L = L;
  f.bases.resize(N + 1);
  f.coeffs.resize(N + 1);
  const int order = rule_order > 0 ? rule_order : default_rule_order(N, L);
  QuadratureRule rule = make_latitude_rule(order);
  for (int n = 0; n <= N; ++n) {
    f.bases[n] = std::make_shared<ModeBasis>(make_mode_basis(n, L, rule));
    f.coeffs[n] = Eigen::VectorXcd::Zero(f.bases[n]->count());
  }
  return f;
}

Eigen::MatrixXd evaluate_field(const Field2D& f, std::span<const double> y_grid) {
  const Eigen::Index nx = f.bases.empty() ? 0 : f.bases[0]->samples.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nx, y_grid.size());
  for (int n = 0; n <= f.N; ++n) {
    Eigen::VectorXcd gx = f.bases[n]->samples * f.coeffs[n];
    for (std::size_t j = 0; j < y_grid.size(); ++j) {
      const std::complex<double> phase = std::exp(std::complex<double>(0.0, n * y_grid[j]));
      for (Eigen::Index i = 0; i < nx; ++i) {
        const std::complex<double> term = gx[i] * phase;
        out(i, j) += (n == 0) ? term.real() : 2.0 * term.real();
      }
    }
  }
  return out;
}

Eigen::VectorXcd fourier_component(const Eigen::MatrixXd& g2d, int n,
                                   std::span<const double> y_grid) {
  const std::size_t ny = y_grid.size();
  if (ny < 2) throw std::invalid_argument("fourier_component: need at least 2 y samples");
  // Trapezoid on a uniform periodic grid: exact up to the Nyquist frequency.
  if (2 * static_cast<std::size_t>(std::abs(n)) + 2 > ny)
    throw std::invalid_argument("fourier_component: y grid too coarse for target frequency");
  const double avg = 1.0 / static_cast<double>(ny);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g2d.rows());
  for (std::size_t j = 0; j < ny; ++j) {
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -n * y_grid[j]));
    for (Eigen::Index i = 0; i < g2d.rows(); ++i) out[i] += g2d(i, j) * phase * avg;
  }
  return out;
}

Eigen::VectorXcd duhamel_evolve_mode(const Eigen::VectorXcd& c0,
                                     std::span<const double> eigenvalues,
                                     const Eigen::MatrixXcd* panel_controls, double T,
                                     const TimeGrid& grid) {
  if (static_cast<std::size_t>(c0.size()) != eigenvalues.size())
    throw std::invalid_argument("duhamel_evolve_mode: eigenvalue count mismatch");
  if (panel_controls == nullptr) {
    Eigen::VectorXcd out = c0;
    for (Eigen::Index j = 0; j < out.size(); ++j) out[j] *= std::exp(-eigenvalues[j] * T);
    return out;
  }
  if (std::abs(grid.horizon - T) > 1e-12 * std::max(1.0, T))
    throw std::invalid_argument("duhamel_evolve_mode: horizon mismatch");
  if (panel_controls->rows() != static_cast<Eigen::Index>(grid.panel_count()) ||
      panel_controls->cols() != c0.size())
    throw std::invalid_argument("duhamel_evolve_mode: control shape mismatch");
  Eigen::VectorXcd c = c0;
  double t = 0.0;
  auto decay_to = [&](double t_next) {
    const double d = t_next - t;
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= std::exp(-eigenvalues[j] * d);
    t = t_next;
  };
  decay_to(grid.panels.front());
  for (std::size_t p = 0; p + 1 < grid.panels.size(); ++p) {
    const double d = grid.panels[p + 1] - grid.panels[p];
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      c[j] = c[j] * std::exp(-eigenvalues[j] * d) +
             (*panel_controls)(static_cast<Eigen::Index>(p), j) * panel_gain(eigenvalues[j], d);
    }
    t = grid.panels[p + 1];
  }
  decay_to(T);
  return c;
}

Field2D duhamel_evolve(const Field2D& f0, const Control2D* control, double T,
                       const TimeGrid& grid) {
  Field2D out = f0;
  for (int n = 0; n <= f0.N; ++n) {
    const Eigen::MatrixXcd* panels = nullptr;
    if (control && n < static_cast<int>(control->modes.size()) &&
        control->modes[n].panel_coeffs.size() > 0)
      panels = &control->modes[n].panel_coeffs;
    const TimeGrid& g = control ? control->grid : grid;
    out.coeffs[n] = duhamel_evolve_mode(f0.coeffs[n], f0.bases[n]->eigenvalues, panels, T, g);
  }
  return out;
}

}  // namespace grushin
