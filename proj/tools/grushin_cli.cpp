#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "grushin/carleman.hpp"
#include "grushin/hum.hpp"
#include "grushin/observability.hpp"
#include "grushin/report.hpp"
#include "grushin/spectral.hpp"
#include "grushin/transforms.hpp"
#include "grushin/verify.hpp"

namespace fs = std::filesystem;
using namespace grushin;

namespace {

std::string out_dir(const Config& cfg) {
  const std::string dir = cfg.get_string("output.dir", ".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

void stamp(CsvTable& table, const Config& cfg) {
  std::ostringstream h;
  h << std::hex << cfg.hash();
  table.add_metadata("configHash", h.str());
}

void emit(const CsvTable& table, const Config& cfg, const std::string& dir,
          const std::string& name) {
  table.write(dir + "/" + name + ".csv");
  if (cfg.get_int("json", 0)) {
    nlohmann::json j;
    j["columns"] = table.columns();
    j["rows"] = table.rows();
    for (const auto& [k, v] : table.metadata()) j["metadata"][k] = v;
    std::ofstream out(dir + "/" + name + ".json", std::ios::binary);
    if (!out) throw IoError("cannot write " + dir + "/" + name + ".json");
    out << j.dump(2) << '\n';
  }
}

double exact_panel_gain(double lambda, double d) {
  if (lambda == 0.0) return d;
  return -std::expm1(-lambda * d) / lambda;
}

int cmd_spectrum(const Config& cfg) {
  const int n_max = cfg.get_int("modes.nMax", 8);
  const int L = cfg.get_int("truncation.L", 40);
  CsvTable table({"n", "l", "lambda", "gramDeviation"});
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const int Leff = std::max(L, n);
    ModeBasis basis = make_mode_basis(n, Leff);
    Eigen::MatrixXd G = gram_matrix(basis.samples, basis.rule);
    for (int j = 0; j < basis.count(); ++j) {
      Eigen::VectorXd row = G.row(j);
      row[j] -= 1.0;
      const double dev = row.cwiseAbs().maxCoeff();
      worst = std::max(worst, dev);
      table.add_row({std::to_string(n), std::to_string(n + j),
                     format_full(basis.eigenvalues[j]), format_full(dev)});
    }
  }
  table.add_metadata("nMax", std::to_string(n_max));
  table.add_metadata("L", std::to_string(L));
  stamp(table, cfg);
  emit(table, cfg, out_dir(cfg), "spectrum");
  std::cout << "spectrum: " << (n_max + 1) << " modes, max Gram deviation "
            << format_display(worst) << "\n";
  return 0;
}

struct LoadedControl {
  Control2D control;
  double T = 0.0;
  int steps = 0;
};

LoadedControl load_control(const std::string& path, int L) {
  std::ifstream in(path);
  if (!in) throw IoError("control file not found: " + path);
  LoadedControl out;
  std::map<std::string, std::string> meta;
  std::string line;
  std::getline(in, line);  // header
  struct Entry {
    int panel, n, l;
    std::complex<double> value;
  };
  std::vector<Entry> entries;
  int max_n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos)
        meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw IoError("control file: malformed row: " + line);
    Entry e;
    e.panel = std::stoi(cells[0]);
    e.n = std::stoi(cells[3]);
    e.l = std::stoi(cells[4]);
    e.value = {std::stod(cells[5]), std::stod(cells[6])};
    entries.push_back(e);
    max_n = std::max(max_n, e.n);
  }
  if (!meta.count("T") || !meta.count("steps"))
    throw IoError("control file: missing T/steps metadata: " + path);
  out.T = std::stod(meta["T"]);
  out.steps = std::stoi(meta["steps"]);
  out.control.grid = make_control_grid(out.T, out.steps);
  out.control.modes.resize(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    auto basis = std::make_shared<const ModeBasis>(make_mode_basis(n, std::max(L, n)));
    out.control.modes[n].basis = basis;
    out.control.modes[n].panel_coeffs =
        Eigen::MatrixXcd::Zero(out.control.grid.panel_count(), basis->count());
  }
  for (const auto& e : entries) {
    auto& mc = out.control.modes[e.n];
    const int col = e.l - e.n;
    if (e.panel < 0 || e.panel >= mc.panel_coeffs.rows() || col < 0 ||
        col >= mc.panel_coeffs.cols())
      throw IoError("control file: entry out of range");
    mc.panel_coeffs(e.panel, col) = e.value;
  }
  return out;
}

int cmd_simulate(const Config& cfg) {
  const double T = cfg.get_double("time.T", 1.0);
  const int steps = cfg.get_int("time.steps", 50);
  const int n0 = cfg.get_int("sim.n", 1);
  const int l0 = cfg.get_int("sim.l", std::max(n0, 1));
  const int L = std::max(cfg.get_int("truncation.L", 10), l0);
  if (!(T > 0.0)) throw ConfigError("time.T must be positive");
  if (l0 < n0) throw ConfigError("sim.l must be >= sim.n");

  Field2D f0 = make_field(n0, L);
  f0.coeffs[n0][l0 - n0] = 1.0;

  const std::string control_path = cfg.get_string("control.file", "");
  LoadedControl loaded;
  const Control2D* control = nullptr;
  TimeGrid grid = make_control_grid(T, steps);
  if (!control_path.empty()) {
    loaded = load_control(control_path, L);
    if (std::abs(loaded.T - T) > 1e-12 * std::max(1.0, T))
      throw ConfigError("control horizon does not match time.T");
    control = &loaded.control;
    grid = loaded.control.grid;
  }

  // March panel by panel so intermediate norms come out of the same
  // recurrence the full evolution uses.
  Field2D state = f0;
  CsvTable norms({"t", "norm"});
  std::vector<double> ts{0.0}, ns{std::sqrt(f0.squared_norm())};
  norms.add_row({format_full(0.0), format_full(ns[0])});
  for (std::size_t p = 0; p < grid.panel_count(); ++p) {
    const double d = grid.panels[p + 1] - grid.panels[p];
    for (int n = 0; n <= state.N; ++n) {
      for (int j = 0; j < state.coeffs[n].size(); ++j) {
        const double lambda = state.bases[n]->eigenvalues[j];
        std::complex<double> c = state.coeffs[n][j] * std::exp(-lambda * d);
        if (control && n < static_cast<int>(control->modes.size()) &&
            control->modes[n].panel_coeffs.size() > 0)
          c += control->modes[n].panel_coeffs(p, j) * exact_panel_gain(lambda, d);
        state.coeffs[n][j] = c;
      }
    }
    ts.push_back(grid.panels[p + 1]);
    ns.push_back(std::sqrt(state.squared_norm()));
    norms.add_row({format_full(ts.back()), format_full(ns.back())});
  }
  norms.add_metadata("T", format_full(T));
  norms.add_metadata("steps", std::to_string(steps));
  stamp(norms, cfg);
  const std::string dir = out_dir(cfg);
  emit(norms, cfg, dir, "norms");

  CsvTable final_state({"n", "l", "re", "im"});
  for (int n = 0; n <= state.N; ++n)
    for (int j = 0; j < state.coeffs[n].size(); ++j)
      final_state.add_row({std::to_string(n), std::to_string(n + j),
                           format_full(state.coeffs[n][j].real()),
                           format_full(state.coeffs[n][j].imag())});
  stamp(final_state, cfg);
  emit(final_state, cfg, dir, "final_state");
  write_svg_lines(dir + "/norms.svg", "field norm over time", {{"norm", ts, ns}});
  std::cout << "simulate: norm " << format_display(ns.front()) << " -> "
            << format_display(ns.back()) << " over T = " << format_display(T) << "\n";
  return 0;
}

int cmd_mintime(const Config& cfg) {
  const double a = cfg.get_double("region.a", std::numbers::pi / 3.0);
  const double b = cfg.get_double("region.b", 1.2);
  if (a >= b) throw ConfigError("region.a must be smaller than region.b");
  ControlRegion region = make_region(a, b);
  const auto bound = mintime_lower_bound(region);
  auto t_list = cfg.get_double_list("mintime.TList", {0.3, 0.6, 1.4});
  std::vector<double> n_default;
  for (int n = 10; n <= 100; n += 10) n_default.push_back(n);
  auto n_list = cfg.get_double_list("mintime.nList", n_default);

  CsvTable table({"T", "n", "ratio", "logRatio", "lhsLog", "boundLog", "stirlingLog"});
  std::vector<SvgSeries> series;
  for (double T : t_list) {
    SvgSeries s;
    s.label = "T=" + format_display(T);
    std::vector<std::pair<int, double>> ratios;
    for (double nd : n_list) {
      const int n = static_cast<int>(nd);
      const double lr = mintime_log_ratio(n, T, region);
      auto [lhs, rhs] = mintime_bound_logs(n, T, region);
      table.add_row({format_full(T), std::to_string(n), format_full(std::exp(lr)),
                     format_full(lr), format_full(lhs), format_full(rhs),
                     format_full(2.0 * n * (T + std::log(std::cos(a))) +
                                 mintime_stirling_log(n, region))});
      s.x.push_back(n);
      s.y.push_back(lr);
      ratios.emplace_back(n, lr);
    }
    series.push_back(std::move(s));
    if (T < bound.value) {
      bool decreasing = true;
      for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i].first > 20 && ratios[i].second >= ratios[i - 1].second) decreasing = false;
      table.add_metadata("flag.T=" + format_display(T),
                         decreasing ? "consistent-with-non-observability" : "inconclusive");
    }
  }
  table.add_metadata("threshold", format_full(bound.value));
  stamp(table, cfg);
  const std::string dir = out_dir(cfg);
  emit(table, cfg, dir, "mintime");
  write_svg_lines(dir + "/mintime.svg", "log observability ratio vs n", series);
  std::cout << "mintime: threshold log(1/cos a) = " << format_display(bound.value) << "\n";
  return 0;
}

int cmd_observability(const Config& cfg) {
  const double a = cfg.get_double("region.a", 1.0472);
  const double b = cfg.get_double("region.b", 1.2);
  const double T = cfg.get_double("time.T", 1.4);
  const int n_max = cfg.get_int("modes.nMax", 20);
  const int L = cfg.get_int("truncation.L", 12);
  ControlRegion region = make_region(a, b);
  auto report = uniform_scan(region, T, n_max, L);

  CsvTable table({"n", "C_n", "effectiveDim", "logRatio"});
  for (const auto& row : report.rows)
    table.add_row({std::to_string(row.n), format_full(row.constant),
                   std::to_string(row.effective_dim), format_full(row.log_ratio)});
  table.add_metadata("T", format_full(T));
  table.add_metadata("L", std::to_string(L));
  table.add_metadata("threshold", format_full(report.threshold));
  table.add_metadata("maxConstant", format_full(report.max_constant));
  table.add_metadata("trend", report.trend);
  table.add_metadata("disclaimer", report.disclaimer);
  stamp(table, cfg);
  emit(table, cfg, out_dir(cfg), "observability");
  std::cout << "observability: max C_n " << format_display(report.max_constant) << " ("
            << report.trend << " across n <= " << n_max << ")\n";
  return 0;
}

int cmd_control(const Config& cfg) {
  const double a = cfg.get_double("region.a", 0.6);
  const double b = cfg.get_double("region.b", 1.2);
  const double T = cfg.get_double("time.T", 1.0);
  const int steps = cfg.get_int("time.steps", 32);
  const int n0 = cfg.get_int("sim.n", 0);
  const int l0 = cfg.get_int("sim.l", n0);
  const int L = std::max(cfg.get_int("truncation.L", 8), l0);
  auto eps_list = cfg.get_double_list("hum.epsilonList", {1e-2, 1e-4, 1e-6});
  ControlRegion region = make_region(a, b);
  if (l0 < n0) throw ConfigError("sim.l must be >= sim.n");

  auto basis = std::make_shared<const ModeBasis>(make_mode_basis(n0, L));
  TimeGrid grid = make_control_grid(T, steps);
  ModeState f0;
  f0.basis = basis;
  f0.coeffs = Eigen::VectorXd::Zero(basis->count());
  f0.coeffs[l0 - n0] = 1.0;

  CsvTable table({"epsilon", "finalNorm", "controlCost", "simGap"});
  std::vector<double> log_eps, log_norm;
  ModeControlSolution last;
  for (double eps : eps_list) {
    auto sol = solve_mode_control(f0, region, T, eps, grid);
    double cost = 0.0;
    for (std::size_t p = 0; p < grid.panel_count(); ++p)
      cost += (grid.panels[p + 1] - grid.panels[p]) * sol.panel_controls.row(p).squaredNorm();
    Eigen::VectorXcd c0 = f0.coeffs.cast<std::complex<double>>();
    Eigen::VectorXcd sim =
        duhamel_evolve_mode(c0, basis->eigenvalues, &sol.panel_controls, T, grid);
    const double gap = (sim - sol.predicted_final).norm();
    table.add_row({format_full(eps), format_full(sol.predicted_final.norm()),
                   format_full(cost), format_full(gap)});
    log_eps.push_back(std::log10(eps));
    log_norm.push_back(std::log10(std::max(sol.predicted_final.norm(), 1e-300)));
    last = std::move(sol);
  }
  table.add_metadata("n", std::to_string(n0));
  table.add_metadata("l", std::to_string(l0));
  table.add_metadata("T", format_full(T));
  stamp(table, cfg);
  const std::string dir = out_dir(cfg);
  emit(table, cfg, dir, "hum_sweep");
  write_svg_lines(dir + "/hum_sweep.svg", "log10 final norm vs log10 epsilon",
                  {{"finalNorm", log_eps, log_norm}});

  CsvTable panels({"panel", "t0", "t1", "n", "l", "re", "im"});
  for (std::size_t p = 0; p < grid.panel_count(); ++p)
    for (int j = 0; j < basis->count(); ++j)
      panels.add_row({std::to_string(p), format_full(grid.panels[p]),
                      format_full(grid.panels[p + 1]), std::to_string(n0),
                      std::to_string(n0 + j), format_full(last.panel_controls(p, j).real()),
                      format_full(last.panel_controls(p, j).imag())});
  panels.add_metadata("T", format_full(T));
  panels.add_metadata("steps", std::to_string(steps));
  panels.add_metadata("epsilon", format_full(eps_list.back()));
  stamp(panels, cfg);
  emit(panels, cfg, dir, "control_panels");
  std::cout << "control: final norm " << format_display(std::pow(10.0, log_norm.back()))
            << " at epsilon " << format_display(eps_list.back()) << "\n";
  return 0;
}

int cmd_carleman(const Config& cfg) {
  const double a = cfg.get_double("region.a", 0.6);
  const double b = cfg.get_double("region.b", 1.2);
  const double ap = cfg.get_double("carleman.aPrime", 0.8);
  const double bp = cfg.get_double("carleman.bPrime", 1.0);
  const double T = cfg.get_double("time.T", 1.0);
  const double s_factor = cfg.get_double("carleman.sFactor", 1.0);

  WeightConstants wc;
  if (cfg.has("carleman.A1") || cfg.has("carleman.A2") || cfg.has("carleman.A3")) {
    wc.A1 = cfg.get_double("carleman.A1", 1.0);
    wc.A2 = cfg.get_double("carleman.A2", 0.0);
    wc.A3 = cfg.get_double("carleman.A3", std::tan(ap) + ap + 4.0);
  } else {
    wc = search_weight_constants(a, b, ap, bp);
  }
  BetaWeight weight = build_beta(a, b, ap, bp, wc.A1, wc.A2, wc.A3);
  auto consts = admissibility_constants(weight);
  const std::string dir = out_dir(cfg);

  CsvTable report({"quantity", "value"});
  auto put = [&report](const std::string& k, double v) { report.add_row({k, format_full(v)}); };
  put("A1", weight.A1);
  put("A2", weight.A2);
  put("A3", weight.A3);
  put("betaMin", weight.beta_min);
  put("betaMax", weight.beta_max);
  put("eta1", weight.eta1);
  put("eta2", weight.eta2);
  put("C1", consts.C1);
  put("C2", consts.C2);
  put("C4", consts.C4);
  put("C5", consts.C5);
  put("C6", consts.C6);
  put("C7", consts.C7);
  put("C8", consts.C8);
  put("C9", consts.C9);
  put("C10", consts.C10);
  put("C11", consts.C11);
  put("C12", consts.C12);
  put("s1", consts.s1);
  put("s2", consts.s2);
  put("R0", consts.R0);
  put("Tstar", consts.T_star);
  put("TstarMin", consts.T_star_min);
  stamp(report, cfg);
  emit(report, cfg, dir, "carleman_report");

  CsvTable theta_csv({"t", "theta", "thetaPrime", "thetaSecond"});
  for (int k = 0; k < 200; ++k) {
    const double t = T * (k + 0.5) / 200;
    const auto th = theta_eval(t, T);
    theta_csv.add_row({format_full(t), format_full(th.th), format_full(th.d1),
                       format_full(th.d2)});
  }
  stamp(theta_csv, cfg);
  emit(theta_csv, cfg, dir, "carleman_theta");

  CsvTable beta_csv({"x", "beta", "betaPrime", "betaSecond"});
  for (int k = 0; k <= 400; ++k) {
    const double x = -std::numbers::pi / 2.0 + std::numbers::pi * k / 400.0;
    beta_csv.add_row({format_full(x), format_full(weight.eval(x, 0)),
                      format_full(weight.eval(x, 1)), format_full(weight.eval(x, 2))});
  }
  stamp(beta_csv, cfg);
  emit(beta_csv, cfg, dir, "carleman_beta");

  QuadratureRule rule = make_latitude_rule(128);
  DiffOps diff(rule.nodes);
  TimeGrid grid = make_time_grid(T, 16);
  CsvTable kernel_csv({"n", "l", "splitResidual", "marginDeg", "marginBdy", "marginCon"});
  std::vector<SpectralSolution> family;
  for (auto [n, l] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 3}, {4, 6}, {6, 6}}) {
    SpectralSolution sol;
    sol.n = n;
    sol.lambda = static_cast<double>(eigenvalue(l, n));
    sol.w = map_U(eigenfunction_vnl(l, n, rule), rule);
    CarlemanParams params = make_params(s_factor, consts.R0, T, n);
    const double resid = split_identity_check(sol, params, weight, rule, diff, grid);
    auto margins = kernel_bounds_check(sol, params, weight, rule, diff, grid);
    kernel_csv.add_row({std::to_string(n), std::to_string(l), format_full(resid),
                        format_full(margins.margin_deg), format_full(margins.margin_bdy),
                        format_full(margins.margin_con)});
    family.push_back(std::move(sol));
  }
  stamp(kernel_csv, cfg);
  emit(kernel_csv, cfg, dir, "carleman_kernel");

  auto ratios = carleman_diagnostic(family, s_factor, T, weight, a, b, rule, diff, grid);
  CsvTable diag({"n", "lambda", "observedRatio"});
  for (std::size_t i = 0; i < family.size(); ++i)
    diag.add_row({std::to_string(family[i].n), format_full(family[i].lambda),
                  format_full(ratios[i])});
  stamp(diag, cfg);
  emit(diag, cfg, dir, "carleman_diagnostic");

  std::cout << "carleman: beta in [" << format_display(weight.beta_min) << ", "
            << format_display(weight.beta_max) << "], eta1 " << format_display(weight.eta1)
            << ", eta2 " << format_display(weight.eta2) << ", s1 " << format_display(consts.s1)
            << ", s2 " << format_display(consts.s2) << ", R0 " << format_display(consts.R0)
            << ", Tstar " << format_display(consts.T_star) << "\n";
  return 0;
}

int cmd_verify(const Config& cfg) {
  auto results = run_verify_suite();
  CsvTable table({"check", "status", "detail"});
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    table.add_row({r.name, r.pass ? "pass" : "fail", r.detail});
  }
  stamp(table, cfg);
  emit(table, cfg, out_dir(cfg), "verify_report");
  std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES above\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical Grushin control toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  bool json = false;
  std::string output_dir;
  app.add_option("--config", config_path, "flat key=value configuration file");
  app.add_flag("--json", json, "also write JSON mirrors of the CSV tables");
  app.add_option("--output-dir", output_dir, "directory for reports");

  // Flag overrides collected as strings so they merge into the config map.
  std::map<std::string, std::string> overrides;
  auto opt = [&overrides](CLI::App* sub, const std::string& flag, const std::string& key,
                          const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
  };

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue table and Gram deviations");
  spectrum->fallthrough();
  opt(spectrum, "--n-max", "modes.nMax", "largest frequency");
  opt(spectrum, "--l-max", "truncation.L", "largest degree");

  auto* simulate = app.add_subcommand("simulate", "evolve an initial field, optional control");
  simulate->fallthrough();
  opt(simulate, "--T", "time.T", "horizon");
  opt(simulate, "--steps", "time.steps", "time panels");
  opt(simulate, "--n", "sim.n", "initial mode frequency");
  opt(simulate, "--l", "sim.l", "initial mode degree");
  opt(simulate, "--control", "control.file", "control panel CSV");

  auto* mintime = app.add_subcommand("mintime", "minimal-time ratio experiment");
  mintime->fallthrough();
  opt(mintime, "--a", "region.a", "inner crown latitude");
  opt(mintime, "--b", "region.b", "outer crown latitude");
  opt(mintime, "--T-list", "mintime.TList", "comma-separated horizons");
  opt(mintime, "--n-list", "mintime.nList", "comma-separated frequencies");

  auto* observability = app.add_subcommand("observability", "per-mode constant scan");
  observability->fallthrough();
  opt(observability, "--T", "time.T", "horizon");
  opt(observability, "--a", "region.a", "inner crown latitude");
  opt(observability, "--b", "region.b", "outer crown latitude");
  opt(observability, "--n-max", "modes.nMax", "largest frequency");
  opt(observability, "--L", "truncation.L", "degree truncation");

  auto* control = app.add_subcommand("control", "penalized control synthesis sweep");
  control->fallthrough();
  opt(control, "--a", "region.a", "inner crown latitude");
  opt(control, "--b", "region.b", "outer crown latitude");
  opt(control, "--T", "time.T", "horizon");
  opt(control, "--steps", "time.steps", "time panels");
  opt(control, "--n", "sim.n", "mode frequency");
  opt(control, "--l", "sim.l", "initial degree");
  opt(control, "--eps-list", "hum.epsilonList", "comma-separated penalties");
  opt(control, "--L", "truncation.L", "degree truncation");

  auto* carleman = app.add_subcommand("carleman", "weight construction and kernel margins");
  carleman->fallthrough();
  opt(carleman, "--a", "region.a", "inner crown latitude");
  opt(carleman, "--b", "region.b", "outer crown latitude");
  opt(carleman, "--a-prime", "carleman.aPrime", "degenerate-side cut");
  opt(carleman, "--b-prime", "carleman.bPrime", "boundary-side cut");
  opt(carleman, "--A1", "carleman.A1", "boundary slope constant");
  opt(carleman, "--A2", "carleman.A2", "boundary offset constant");
  opt(carleman, "--A3", "carleman.A3", "degenerate offset constant");
  opt(carleman, "--s-factor", "carleman.sFactor", "multiple of the admissible s");
  opt(carleman, "--T", "time.T", "horizon");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg = config_path.empty() ? Config{} : Config::from_file(config_path);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    if (json) cfg.set("json", "1");
    if (!output_dir.empty()) cfg.set("output.dir", output_dir);

    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (mintime->parsed()) return cmd_mintime(cfg);
    if (observability->parsed()) return cmd_observability(cfg);
    if (control->parsed()) return cmd_control(cfg);
    if (carleman->parsed()) return cmd_carleman(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
