#pragma once

#include <vector>

namespace bargmann {
namespace xform {

/// Gauss-Hermite rule for weight exp(-u^2): sum w_q f(u_q) ~ int f e^{-u^2}.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Golub-Welsch on the Hermite Jacobi matrix (off-diagonals sqrt(n/2)),
/// reusing the symmetric tridiagonal eigensolver.  Nodes are symmetrized
/// about 0; weights are sqrt(pi) times the squared norming constants.
QuadratureRule gauss_hermite(int q);

/// Normalised Hermite function h_n(u), int h_n h_m du = delta_nm, via the
/// orthonormal three-term recurrence.
double hermite_eval(int n, double u);

/// h_0(u)..h_{n_max}(u) in one sweep.
std::vector<double> hermite_all(int n_max, double u);

/// h_n'(u) = sqrt(n/2) h_{n-1} - sqrt((n+1)/2) h_{n+1}.
double hermite_derivative(int n, double u);

/// h_n''(u) by applying the derivative recurrence twice.
double hermite_second_derivative(int n, double u);

}  // namespace xform
}  // namespace bargmann
