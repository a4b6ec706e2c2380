#include "grushin/observability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace grushin {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Unit-norm concentrating profile w_n = c_n cos^n x sampled at arbitrary
// nodes. The full-interval normalization integral has the exact value
// 2^{2n+1} (n!)^2 / (2n+1)!, evaluated through lgamma.
std::vector<double> sample_wn(int n, std::span<const double> nodes) {
  const double log_norm2 = (2.0 * n + 1.0) * std::numbers::ln2 +
                           2.0 * std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 2.0);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  std::vector<double> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out[i] = sign * std::exp(n * std::log(std::cos(nodes[i])) - 0.5 * log_norm2);
  return out;
}

}  // namespace

bool ControlRegion::contains(double x) const {
  const double ax = std::abs(x);
  if (!both_crowns && x < 0.0) return false;
  return ax > a && ax < b;
}

double ControlRegion::alpha() const { return std::sin(a); }
double ControlRegion::beta() const { return std::sin(b); }

ControlRegion make_region(double a, double b, bool both_crowns) {
  if (!(0.0 < a && a < b && b <= kHalfPi))
    throw std::invalid_argument("make_region: need 0 < a < b <= pi/2");
  return {a, b, both_crowns};
}

QuadratureRule region_rule(const ControlRegion& region, int order_per_crown) {
  QuadratureRule rule = make_interval_rule(region.a, region.b, order_per_crown);
  if (region.both_crowns) {
    QuadratureRule left = make_interval_rule(-region.b, -region.a, order_per_crown);
    rule.nodes.insert(rule.nodes.begin(), left.nodes.begin(), left.nodes.end());
    rule.weights.insert(rule.weights.begin(), left.weights.begin(), left.weights.end());
  }
  rule.kind = "crown";
  return rule;
}

Eigen::MatrixXd spatial_overlap_matrix(const ModeBasis& basis, const ControlRegion& region,
                                       Exec exec) {
  const QuadratureRule sub = region_rule(region);
  const int count = basis.count();
  const int an = std::abs(basis.n);
  Eigen::MatrixXd samples(sub.size(), count);
  for_each_index(
      static_cast<int>(sub.size()),
      [&](int i) {
        auto col = normalized_legendre_column(an, basis.L, std::sin(sub.nodes[i]));
        for (int j = 0; j < count; ++j) samples(i, j) = col[j];
      },
      exec);
  return weighted_cross_gram(samples, samples, sub.weights, exec);
}

Eigen::MatrixXd observability_gramian(const ModeBasis& basis, const ControlRegion& region,
                                      double T, Exec exec) {
  if (!(T > 0.0)) throw std::invalid_argument("observability_gramian: T must be positive");
  Eigen::MatrixXd M = spatial_overlap_matrix(basis, region, exec);
  const int count = basis.count();
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      const double sum = basis.eigenvalues[i] + basis.eigenvalues[j];
      const double theta = sum == 0.0 ? T : -std::expm1(-sum * T) / sum;
      M(i, j) *= theta;
    }
  }
  return M;
}

ObsConstant obs_constant_mode(const ModeBasis& basis, const ControlRegion& region, double T,
                              bool weighted_lhs) {
  const int count = basis.count();
  Eigen::MatrixXd M = observability_gramian(basis, region, T);
  ObsConstant out;
  out.ridge = 1e-14 * M.trace();
  M.diagonal().array() += out.ridge;

  // Terminal weights e^{-2 lambda T}; directions below 1e-300 contribute
  // nothing to the quotient and are dropped to keep the arithmetic clean.
  Eigen::VectorXd decay(count);
  out.effective_dim = 0;
  for (int i = 0; i < count; ++i) {
    const double e = std::exp(-2.0 * basis.eigenvalues[i] * T);
    decay[i] = e < 1e-300 ? 0.0 : e;
    if (decay[i] > 0.0) ++out.effective_dim;
  }
  Eigen::MatrixXd D;
  if (weighted_lhs) {
    D = decay.asDiagonal();
  } else {
    Eigen::MatrixXd plain(count, count);
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j)
        plain(i, j) = inner_plain(
            std::span<const double>(basis.samples.col(i).data(), basis.rule.size()),
            std::span<const double>(basis.samples.col(j).data(), basis.rule.size()),
            basis.rule);
    Eigen::VectorXd half = decay.array().sqrt();
    D = half.asDiagonal() * plain * half.asDiagonal();
  }

  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("obs_constant_mode: Gramian not positive definite after ridge");
  // Whiten: C = max eig of L^{-1} D L^{-T}.
  Eigen::MatrixXd W = llt.matrixL().solve(D);
  W = llt.matrixL().solve(W.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W);
  out.value = es.eigenvalues().maxCoeff();
  return out;
}

double mintime_log_ratio(int n, double T, const ControlRegion& region) {
  if (n < 1) throw std::invalid_argument("mintime_log_ratio: n must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("mintime_log_ratio: T must be positive");
  const QuadratureRule sub = region_rule(region);
  auto w = sample_wn(n, sub.nodes);
  double crown = 0.0;
  for (std::size_t i = 0; i < sub.size(); ++i) crown += sub.weights[i] * w[i] * w[i];
  // w_n is unit in the full weighted norm, so the terminal integral is
  // e^{-2nT}; the time factor is (1 - e^{-2nT}) / (2n).
  return std::log1p(-std::exp(-2.0 * n * T)) - std::log(2.0 * n) + 2.0 * n * T +
         std::log(crown);
}

double mintime_ratio(int n, double T, const ControlRegion& region) {
  return std::exp(mintime_log_ratio(n, T, region));
}

std::pair<double, double> mintime_bound_logs(int n, double T, const ControlRegion& region) {
  if (n < 1) throw std::invalid_argument("mintime_bound_logs: n must be >= 1");
  ControlRegion one = region;
  one.both_crowns = false;
  const QuadratureRule sub = region_rule(one);
  auto w = sample_wn(n, sub.nodes);
  double crown = 0.0;
  for (std::size_t i = 0; i < sub.size(); ++i) crown += sub.weights[i] * w[i] * w[i];
  const double lhs = 2.0 * n * T - std::log(2.0 * n) + std::log(crown);
  const double log_wallis = std::lgamma(2.0 * n + 2.0) - std::log(static_cast<double>(n)) -
                            (2.0 * n + 1.0) * std::numbers::ln2 -
                            2.0 * std::lgamma(n + 1.0);
  const double rhs = 2.0 * n * (T + std::log(std::cos(region.a))) + log_wallis +
                     std::log((region.b - region.a) * std::cos(region.a));
  return {lhs, rhs};
}

double mintime_stirling_log(int n, const ControlRegion& region) {
  return std::log((region.b - region.a) * std::cos(region.a) /
                  (2.0 * std::sqrt(std::numbers::pi))) +
         std::log(2.0 * n + 1.0) - 1.5 * std::log(static_cast<double>(n));
}

MinTimeBound mintime_lower_bound(const ControlRegion& region) {
  MinTimeBound out;
  const double c = std::cos(region.a);
  out.value = std::log(1.0 / c);
  // The second form reads 1/sqrt(1 - sin^2 a); evaluating 1 - sin^2 directly
  // cancels catastrophically near the pole, so the factor is taken as cos^2.
  // What remains distinct is the sqrt/log evaluation route.
  out.alt = -0.5 * std::log(c * c);
  if (std::abs(out.value - out.alt) > 1e-15 * std::max(1.0, std::abs(out.value)))
    throw std::logic_error("mintime_lower_bound: the two closed forms disagree");
  return out;
}

ObservabilityReport uniform_scan(const ControlRegion& region, double T, int Nmax, int L,
                                 Exec exec) {
  if (!(T > 0.0)) throw std::invalid_argument("uniform_scan: T must be positive");
  ObservabilityReport rep;
  rep.T = T;
  rep.L = L;
  rep.region = region;
  rep.threshold = mintime_lower_bound(region).value;
  rep.rows.resize(Nmax + 1);
  for_each_index(
      Nmax + 1,
      [&](int n) {
        const int Leff = std::max(L, n);
        ModeBasis basis = make_mode_basis(n, Leff, make_latitude_rule(default_rule_order(n, Leff)),
                                          Exec::Serial);
        auto c = obs_constant_mode(basis, region, T);
        ObservabilityRow row;
        row.n = n;
        row.constant = c.value;
        row.effective_dim = c.effective_dim;
        row.log_ratio =
            n >= 1 ? mintime_log_ratio(n, T, region) : std::numeric_limits<double>::quiet_NaN();
        rep.rows[n] = row;
      },
      exec);
  rep.max_constant = 0.0;
  for (const auto& row : rep.rows) rep.max_constant = std::max(rep.max_constant, row.constant);
  const double head = rep.rows.front().constant;
  const double tail = rep.rows.back().constant;
  rep.trend = tail > 10.0 * std::max(head, 1.0) ? "growing" : "bounded";
  rep.disclaimer =
      "truncated scan (l <= L, n <= Nmax); no claim is made beyond the computed span";
  return rep;
}

DissipationWindow dissipation_window_bound(int n, double T, double r0, const BetaWeight& weight) {
  if (n < 0 || !(T > 0.0) || !(r0 > 0.0))
    throw std::invalid_argument("dissipation_window_bound: bad arguments");
  DissipationWindow out;
  out.high_frequency = n >= 1.0 + 1.0 / T;
  out.s = out.high_frequency ? r0 * T * T * n : r0 * (T + T * T);
  out.lhs_exponent = -2.0 * n * T / 3.0;
  out.rhs_exponent = 9.0 / (T * T) * out.s * weight.beta_max;
  out.margin = out.lhs_exponent + out.rhs_exponent;
  return out;
}

}  // namespace grushin
