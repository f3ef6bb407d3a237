#include "bargmann/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bargmann/tridiag.hpp"

namespace bargmann {
namespace xform {

QuadratureRule gauss_hermite(int q) {
  if (q < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  tridiag::Tridiag jac;
  jac.diag.assign(q, 0.0);
  jac.super.resize(q - 1);
  for (int i = 0; i + 1 < q; ++i) jac.super[i] = std::sqrt((i + 1) / 2.0);
  jac.sub = jac.super;

  const tridiag::SpectralData sd = tridiag::eigen_sym_tridiag(jac, true);

  QuadratureRule rule;
  rule.order = q;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < q; ++i) {
    rule.nodes[i] = sd.eigenvalues[i];
    rule.weights[i] = mu0 * sd.norming_constants[i] * sd.norming_constants[i];
  }
  // enforce the exact +/- symmetry of the rule
  for (int i = 0; i < q / 2; ++i) {
    const int j = q - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

double hermite_eval(int n, double u) {
  if (n < 0) throw std::invalid_argument("hermite_eval: n must be nonnegative");
  double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  if (n == 0) return h0;
  double h1 = std::sqrt(2.0) * u * h0;
  for (int m = 1; m < n; ++m) {
    const double h2 = std::sqrt(2.0 / (m + 1.0)) * u * h1 - std::sqrt(m / (m + 1.0)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

std::vector<double> hermite_all(int n_max, double u) {
  if (n_max < 0) throw std::invalid_argument("hermite_all: n_max must be nonnegative");
  std::vector<double> h(n_max + 1);
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  if (n_max >= 1) h[1] = std::sqrt(2.0) * u * h[0];
  for (int m = 1; m < n_max; ++m)
    h[m + 1] = std::sqrt(2.0 / (m + 1.0)) * u * h[m] - std::sqrt(m / (m + 1.0)) * h[m - 1];
  return h;
}

double hermite_derivative(int n, double u) {
  const double lo = (n >= 1) ? hermite_eval(n - 1, u) : 0.0;
  return std::sqrt(n / 2.0) * lo - std::sqrt((n + 1) / 2.0) * hermite_eval(n + 1, u);
}

double hermite_second_derivative(int n, double u) {
  // apply h' = sqrt(n/2) h_{n-1} - sqrt((n+1)/2) h_{n+1} twice
  const double a = (n >= 1) ? hermite_derivative(n - 1, u) : 0.0;
  return std::sqrt(n / 2.0) * a - std::sqrt((n + 1) / 2.0) * hermite_derivative(n + 1, u);
}

}  // namespace xform
}  // namespace bargmann
