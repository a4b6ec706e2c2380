#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "grushin/kernels.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

/// lambda_{l,n} = l(l+1) - n^2. Requires l >= |n|.
long eigenvalue(int l, int n);

/// Fully normalized associated Legendre function at t in [-1, 1]:
/// sqrt((2l+1)/2 * (l-n)!/(l+n)!) * P_l^n(t), Condon-Shortley phase included.
/// Evaluated by the normalized three-term recurrence, so no raw factorials
/// appear (the literal prefactor overflows near l ~ 90).
double normalized_legendre(int l, int n, double t);

/// All normalized values for fixed n >= 0 and l = n..L at one point.
std::vector<double> normalized_legendre_column(int n, int L, double t);

/// Eigenfunctions v_{n,l} of one frequency mode, sampled at the quadrature
/// nodes, together with their eigenvalues. Immutable after construction.
struct ModeBasis {
  int n = 0;
  int L = 0;
  QuadratureRule rule;
  std::vector<double> eigenvalues;  // l = |n| .. L
  Eigen::MatrixXd samples;          // (node, l - |n|)

  int count() const { return L - std::abs(n) + 1; }
};

/// Default rule order for a basis: max(64, 2*(L + |n|)); this makes every
/// same-n Gram integral exact in the t = sin x variable.
int default_rule_order(int n, int L);

ModeBasis make_mode_basis(int n, int L, QuadratureRule rule, Exec exec = Exec::Parallel);
ModeBasis make_mode_basis(int n, int L);

/// Samples of v_{n,l} at the rule nodes; v_{-n,l} = (-1)^n v_{n,l}.
std::vector<double> eigenfunction_vnl(int l, int n, const QuadratureRule& rule);

/// Point evaluation of v_{n,l}(x).
double eigenfunction_vnl_at(int l, int n, double x);

/// W_{l,n}(x, y) = (1/sqrt(2 pi)) v_{n,l}(x) e^{i n y}.
std::complex<double> spherical_harmonic(int l, int n, double x, double y);

/// Samples of the concentrating family w_n ~ (-1)^n cos^n x, renormalized
/// numerically so that inner_weighted(w_n, w_n) = 1. Log-space evaluation
/// keeps it finite up to n ~ 200 and beyond.
std::vector<double> concentrating_wn(int n, const QuadratureRule& rule);

/// |v_{n,l}(pi/2 - delta)| / sqrt(cos(pi/2 - delta)); tends to 0 as
/// delta -> 0 for n != 0.
double endpoint_decay_check(int l, int n, double delta);

}  // namespace grushin
