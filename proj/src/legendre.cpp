#include "grushin/legendre.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grushin {

namespace {

// Seed of the normalized recurrence: the fully normalized P_n^n(t), i.e.
// (-1)^n sqrt((2n+1)/2) sqrt((2n-1)!!/(2n)!!) (1 - t^2)^{n/2}, in log space.
double seed_pnn(int n, double t) {
  const double one_minus_t2 = (1.0 - t) * (1.0 + t);
  if (n > 0 && one_minus_t2 <= 0.0) return 0.0;
  double log_mag = 0.5 * std::log((2.0 * n + 1.0) / 2.0);
  for (int k = 1; k <= n; ++k) log_mag += 0.5 * std::log((2.0 * k - 1.0) / (2.0 * k));
  if (n > 0) log_mag += 0.5 * n * std::log(one_minus_t2);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_mag);
}

double recurrence_factor(int l, int n) {
  return std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(n) * n));
}

}  // namespace

long eigenvalue(int l, int n) {
  if (l < std::abs(n)) throw std::invalid_argument("eigenvalue: requires l >= |n|");
  return static_cast<long>(l) * (l + 1) - static_cast<long>(n) * n;
}

std::vector<double> normalized_legendre_column(int n, int L, double t) {
  if (n < 0) throw std::invalid_argument("normalized_legendre_column: n must be >= 0");
  if (L < n) throw std::invalid_argument("normalized_legendre_column: L must be >= n");
  if (std::abs(t) > 1.0) throw std::invalid_argument("normalized_legendre_column: |t| > 1");
  std::vector<double> out(L - n + 1);
  double prev2 = 0.0;
  double prev1 = seed_pnn(n, t);
  out[0] = prev1;
  for (int l = n + 1; l <= L; ++l) {
    const double a = recurrence_factor(l, n);
    const double inv_prev_a = (l == n + 1) ? 0.0 : 1.0 / recurrence_factor(l - 1, n);
    const double cur = a * (t * prev1 - inv_prev_a * prev2);
    out[l - n] = cur;
    prev2 = prev1;
    prev1 = cur;
  }
  return out;
}

double normalized_legendre(int l, int n, double t) {
  if (n < 0 || n > l) throw std::invalid_argument("normalized_legendre: requires 0 <= n <= l");
  if (std::abs(t) > 1.0) throw std::invalid_argument("normalized_legendre: |t| > 1");
  return normalized_legendre_column(n, l, t).back();
}

int default_rule_order(int n, int L) { return std::max(64, 2 * (L + std::abs(n))); }

ModeBasis make_mode_basis(int n, int L, QuadratureRule rule, Exec exec) {
  if (L < std::abs(n)) throw std::invalid_argument("make_mode_basis: L must be >= |n|");
  ModeBasis basis;
  basis.n = n;
  basis.L = L;
  basis.rule = std::move(rule);
  const int an = std::abs(n);
  const int count = L - an + 1;
  basis.eigenvalues.resize(count);
  for (int l = an; l <= L; ++l) basis.eigenvalues[l - an] = static_cast<double>(eigenvalue(l, n));
  const int nn = static_cast<int>(basis.rule.size());
  basis.samples.resize(nn, count);
  const double phase = (n < 0 && an % 2 == 1) ? -1.0 : 1.0;
  for_each_index(
      nn,
      [&](int i) {
        auto col = normalized_legendre_column(an, L, std::sin(basis.rule.nodes[i]));
        for (int j = 0; j < count; ++j) basis.samples(i, j) = phase * col[j];
      },
      exec);
  return basis;
}

ModeBasis make_mode_basis(int n, int L) {
  return make_mode_basis(n, L, make_latitude_rule(default_rule_order(n, L)));
}

std::vector<double> eigenfunction_vnl(int l, int n, const QuadratureRule& rule) {
  const int an = std::abs(n);
  if (l < an) throw std::invalid_argument("eigenfunction_vnl: requires |n| <= l");
  const double phase = (n < 0 && an % 2 == 1) ? -1.0 : 1.0;
  std::vector<double> out(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
    out[i] = phase * normalized_legendre(l, an, std::sin(rule.nodes[i]));
  return out;
}

double eigenfunction_vnl_at(int l, int n, double x) {
  const int an = std::abs(n);
  if (l < an) throw std::invalid_argument("eigenfunction_vnl_at: requires |n| <= l");
  const double phase = (n < 0 && an % 2 == 1) ? -1.0 : 1.0;
  return phase * normalized_legendre(l, an, std::sin(x));
}

std::complex<double> spherical_harmonic(int l, int n, double x, double y) {
  const double vx = eigenfunction_vnl_at(l, n, x);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return inv_sqrt_2pi * vx * std::exp(std::complex<double>(0.0, n * y));
}

std::vector<double> concentrating_wn(int n, const QuadratureRule& rule) {
  if (n < 1) throw std::invalid_argument("concentrating_wn: n must be >= 1");
  const std::size_t m = rule.size();
  // log |w_n|^2 cos x summed in log space to dodge overflow of the
  // factorial prefactor.
  std::vector<double> log_terms(m);
  double max_term = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    log_terms[i] = std::log(rule.weights[i]) + 2.0 * n * std::log(std::cos(rule.nodes[i]));
    max_term = std::max(max_term, log_terms[i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += std::exp(log_terms[i] - max_term);
  const double log_norm2 = max_term + std::log(acc);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i)
    out[i] = sign * std::exp(n * std::log(std::cos(rule.nodes[i])) - 0.5 * log_norm2);
  return out;
}

double endpoint_decay_check(int l, int n, double delta) {
  if (n == 0) throw std::invalid_argument("endpoint_decay_check: n must be non-zero");
  if (!(delta > 0.0 && delta < 0.1))
    throw std::invalid_argument("endpoint_decay_check: delta must lie in (0, 0.1)");
  const double x = std::numbers::pi / 2.0 - delta;
  return std::abs(eigenfunction_vnl_at(l, n, x)) / std::sqrt(std::cos(x));
}

}  // namespace grushin
