#include "grushin/verify.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "grushin/carleman.hpp"
#include "grushin/hardy.hpp"
#include "grushin/hum.hpp"
#include "grushin/observability.hpp"
#include "grushin/spectral.hpp"
#include "grushin/transforms.hpp"

namespace grushin {

namespace {

constexpr double kPi = std::numbers::pi;

void run_check(std::vector<CheckResult>& out, const std::string& name, auto&& body) {
  CheckResult r;
  r.name = name;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(std::move(r));
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::vector<CheckResult> run_verify_suite() {
  std::vector<CheckResult> results;

  run_check(results, "basis-orthonormality", [](CheckResult& r) {
    ModeBasis basis = make_mode_basis(3, 18);
    Eigen::MatrixXd G = gram_matrix(basis.samples, basis.rule);
    const double dev = (G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
    r.pass = dev < 1e-8;
    r.detail = "max Gram deviation " + num(dev) + " (bound 1e-8)";
  });

  run_check(results, "eigen-residual", [](CheckResult& r) {
    ModeBasis basis = make_mode_basis(3, 18);
    DiffOps diff(basis.rule.nodes);
    auto v = eigenfunction_vnl(8, 3, basis.rule);
    auto lv = apply_Ln(v, basis, diff);
    const double lambda = static_cast<double>(eigenvalue(8, 3));
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      err = std::max(err, std::abs(lv[i] + lambda * v[i]));
      scale = std::max(scale, std::abs(lambda * v[i]));
    }
    r.pass = err / scale < 1e-6;
    r.detail = "relative residual " + num(err / scale) + " (bound 1e-6)";
  });

  run_check(results, "mode-dissipation", [](CheckResult& r) {
    auto basis = std::make_shared<const ModeBasis>(make_mode_basis(2, 10));
    ModeState s;
    s.basis = basis;
    s.coeffs = Eigen::VectorXd::LinSpaced(basis->count(), 1.0, 0.3);
    auto [lhs, rhs] = dissipation_check(s, 0.2, 0.9);
    r.pass = lhs <= rhs * (1.0 + 1e-12);
    r.detail = "final norm " + num(lhs) + " <= decayed bound " + num(rhs);
  });

  run_check(results, "hardy-bound", [](CheckResult& r) {
    QuadratureRule rule = make_latitude_rule(128);
    DiffOps diff(rule.nodes);
    std::vector<std::vector<double>> family;
    for (int l = 1; l <= 6; ++l) family.push_back(eigenfunction_vnl(l, 1, rule));
    const double worst = hardy_constant_probe(family, rule, diff);
    r.pass = worst <= 1.0 + 1e-10;
    r.detail = "worst lhs/rhs " + num(worst) + " (bound 1)";
  });

  run_check(results, "time-threshold", [](CheckResult& r) {
    auto bound = mintime_lower_bound(make_region(kPi / 3.0, 1.2));
    const double err = std::abs(bound.value - std::log(2.0));
    r.pass = err < 1e-12;
    r.detail = "log(1/cos(pi/3)) = " + num(bound.value) + ", |err| " + num(err);
  });

  run_check(results, "gramian-duality", [](CheckResult& r) {
    ModeBasis basis = make_mode_basis(2, 10);
    ControlRegion region = make_region(0.6, 1.2);
    Eigen::MatrixXd A = observability_gramian(basis, region, 0.8);
    Eigen::MatrixXd B = hum_gramian(basis, region, 0.8);
    const double dev = (A - B).cwiseAbs().maxCoeff();
    r.pass = dev < 1e-12;
    r.detail = "entrywise gap " + num(dev) + " (bound 1e-12)";
  });

  run_check(results, "ratio-decay", [](CheckResult& r) {
    ControlRegion region = make_region(kPi / 3.0, 1.2);
    const double T = 0.6;  // below the log 2 threshold
    const double r10 = mintime_log_ratio(10, T, region);
    const double r40 = mintime_log_ratio(40, T, region);
    const double r80 = mintime_log_ratio(80, T, region);
    r.pass = r40 < r10 && r80 < r40;
    r.detail = "log ratios " + num(r10) + " > " + num(r40) + " > " + num(r80);
  });

  run_check(results, "factorial-bound", [](CheckResult& r) {
    ControlRegion region = make_region(kPi / 3.0, 1.2);
    double worst = -1e300;
    for (int n = 1; n <= 100; ++n) {
      auto [lhs, rhs] = mintime_bound_logs(n, 0.6, region);
      worst = std::max(worst, lhs - rhs);
    }
    r.pass = worst <= 1e-10;
    r.detail = "max log(lhs/bound) " + num(worst) + " over n <= 100";
  });

  run_check(results, "constant-vs-ratio", [](CheckResult& r) {
    ControlRegion region = make_region(kPi / 3.0, 1.2);
    const double T = 0.6;
    bool ok = true;
    double worst = 0.0;
    for (int n : {1, 3, 5, 8}) {
      ModeBasis basis = make_mode_basis(n, n + 8);
      const double c = obs_constant_mode(basis, region, T).value;
      const double inv_ratio = std::exp(-mintime_log_ratio(n, T, region));
      ok = ok && c >= inv_ratio * (1.0 - 1e-10);
      worst = std::max(worst, inv_ratio / c);
    }
    r.pass = ok;
    r.detail = "max (1/ratio)/C " + num(worst) + " (must be <= 1)";
  });

  run_check(results, "temporal-weight", [](CheckResult& r) {
    auto rep = theta_inequalities_check(1.0, 1000);
    r.pass = rep.all_hold();
    r.detail = "min margins " + num(rep.margin_theta) + ", " + num(rep.margin_d1) + ", " +
               num(rep.margin_theta_d1) + ", " + num(rep.margin_d2);
  });

  run_check(results, "weight-admissibility", [](CheckResult& r) {
    auto wc = search_weight_constants(0.6, 1.2, 0.8, 1.0);
    BetaWeight w = build_beta(0.6, 1.2, 0.8, 1.0, wc.A1, wc.A2, wc.A3);
    auto c = admissibility_constants(w);
    r.pass = w.beta_min >= 1.0 && w.eta1 > 0.0 && w.eta2 > 0.0 && c.R0 > 0.0;
    r.detail = "beta in [" + num(w.beta_min) + ", " + num(w.beta_max) + "], R0 " + num(c.R0);
  });

  run_check(results, "kernel-positivity", [](CheckResult& r) {
    auto wc = search_weight_constants(0.6, 1.2, 0.8, 1.0);
    BetaWeight w = build_beta(0.6, 1.2, 0.8, 1.0, wc.A1, wc.A2, wc.A3);
    auto c = admissibility_constants(w);
    QuadratureRule rule = make_latitude_rule(96);
    DiffOps diff(rule.nodes);
    TimeGrid grid = make_time_grid(1.0, 16);
    SpectralSolution sol;
    sol.n = 2;
    sol.lambda = static_cast<double>(eigenvalue(4, 2));
    auto v = eigenfunction_vnl(4, 2, rule);
    sol.w = map_U(v, rule);
    CarlemanParams params = make_params(1.0, c.R0, 1.0, 2);
    auto bounds = kernel_bounds_check(sol, params, w, rule, diff, grid);
    r.pass = bounds.all_nonnegative();
    r.detail = "margins " + num(bounds.margin_deg) + ", " + num(bounds.margin_bdy) + ", " +
               num(bounds.margin_con);
  });

  run_check(results, "control-contract", [](CheckResult& r) {
    auto basis = std::make_shared<const ModeBasis>(make_mode_basis(0, 8));
    ControlRegion region = make_region(0.6, 1.2);
    const double T = 1.0;
    TimeGrid grid = make_control_grid(T, 32);
    ModeState f0;
    f0.basis = basis;
    f0.coeffs = Eigen::VectorXd::Zero(basis->count());
    f0.coeffs[0] = 1.0;
    double prev = -1.0;
    bool shrinking = true;
    double sim_gap = 0.0;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      auto sol = solve_mode_control(f0, region, T, eps, grid);
      const double fin = sol.predicted_final.norm();
      if (prev >= 0.0 && fin > prev / 3.0) shrinking = false;
      prev = fin;
      Eigen::VectorXcd c0 = f0.coeffs.cast<std::complex<double>>();
      Eigen::VectorXcd simulated =
          duhamel_evolve_mode(c0, basis->eigenvalues, &sol.panel_controls, T, grid);
      sim_gap = std::max(sim_gap, (simulated - sol.predicted_final).norm());
    }
    r.pass = shrinking && sim_gap < 1e-8;
    r.detail = "final norm " + num(prev) + " at eps 1e-6, sim gap " + num(sim_gap);
  });

  return results;
}

}  // namespace grushin
