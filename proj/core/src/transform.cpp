#include "bargmann/transform.hpp"

#include <cmath>
#include <numbers>

namespace bargmann {
namespace xform {

namespace {
constexpr double kPi = std::numbers::pi;

void check_rule(const QuadratureRule& rule, const char* who) {
  if (rule.order < 1 || rule.nodes.size() != rule.weights.size() ||
      static_cast<int>(rule.nodes.size()) != rule.order)
    throw std::invalid_argument(std::string(who) + ": malformed quadrature rule");
}

void check_finite(Complex v, const char* who) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NumericalError(std::string(who) + ": non-finite integrand value at a node");
}
}  // namespace

TransformKernel TransformKernel::zhu(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("TransformKernel: alpha must be positive");
  return {alpha, false};
}

double TransformKernel::constant() const {
  return classical_form ? std::pow(kPi, -0.25) : std::pow(2.0 * alpha / kPi, 0.25);
}

Complex bargmann_kernel(const TransformKernel& kern, Complex z, double u) {
  if (kern.classical_form)
    return kern.constant() *
           std::exp(-0.5 * u * u + std::sqrt(2.0) * u * z - 0.5 * z * z);
  const double a = kern.alpha;
  return kern.constant() * std::exp(-a * u * u + 2.0 * a * u * z - 0.5 * a * z * z);
}

Complex kernel_gram(const TransformKernel& kern, Complex z, Complex w,
                    const QuadratureRule& rule) {
  check_rule(rule, "kernel_gram");
  Complex acc = 0.0;
  for (int q = 0; q < rule.order; ++q) {
    const double u = rule.nodes[q];
    acc += rule.weights[q] * std::exp(u * u) * bargmann_kernel(kern, z, u) *
           std::conj(bargmann_kernel(kern, w, u));
  }
  return acc;
}

Complex transform(const TransformKernel& kern, const RealFn& f, Complex z,
                  const QuadratureRule& rule) {
  check_rule(rule, "transform");
  Complex acc = 0.0;
  for (int q = 0; q < rule.order; ++q) {
    const double u = rule.nodes[q];
    const Complex fv = f(u);
    check_finite(fv, "transform");
    acc += rule.weights[q] * std::exp(u * u) * bargmann_kernel(kern, z, u) * fv;
  }
  return acc;
}

Complex transform(const CoeffVec& hermite_coeffs, Complex z) {
  Complex acc = 0.0;
  for (size_t n = 0; n < hermite_coeffs.size(); ++n)
    acc += hermite_coeffs[n] * fock::basis_eval(static_cast<int>(n), z);
  return acc;
}

CoeffVec disk_coefficients(const PlaneFn& phi, int n, double r, int m) {
  if (n < 1) throw std::invalid_argument("disk_coefficients: need n >= 1");
  if (m < 2 * n) m = 2 * n;
  std::vector<Complex> samples(m);
  for (int q = 0; q < m; ++q) {
    const double th = 2.0 * kPi * q / m;
    samples[q] = phi(Complex(r * std::cos(th), r * std::sin(th)));
  }
  CoeffVec coeffs(n);
  for (int j = 0; j < n; ++j) {
    Complex acc = 0.0;
    for (int q = 0; q < m; ++q) {
      const double th = 2.0 * kPi * q / m;
      acc += samples[q] * std::exp(Complex(0.0, -th * j));
    }
    // a_j = sqrt(j!) r^{-j} (1/m) sum phi(r e^{i th}) e^{-i j th}
    const double lg = 0.5 * std::lgamma(j + 1.0) - j * std::log(r);
    coeffs[j] = acc / static_cast<double>(m) * std::exp(lg);
  }
  return coeffs;
}

PlaneQuadValue adjoint_transform(double alpha, const PlaneFn& phi, double u,
                                 const QuadratureRule& rule) {
  if (alpha <= 0.0) throw std::invalid_argument("adjoint_transform: alpha must be positive");
  check_rule(rule, "adjoint_transform");
  const int q = rule.order;
  const double root_a = std::sqrt(alpha);
  const double c = std::pow(2.0, 0.25) * std::pow(alpha, 1.25) / std::pow(kPi, 1.25);

  // x = s/sqrt(alpha), y = t/sqrt(alpha) turns e^{-alpha|z|^2} dxdy into the
  // product Gauss-Hermite weight; the weights then absorb it exactly.
  PlaneQuadValue out;
  Complex acc = 0.0;
  double max_mag = 0.0, edge_mag = 0.0;
  for (int ix = 0; ix < q; ++ix) {
    for (int iy = 0; iy < q; ++iy) {
      const Complex z(rule.nodes[ix] / root_a, rule.nodes[iy] / root_a);
      const Complex zb = std::conj(z);
      const Complex kernel =
          std::exp(-alpha * u * u + 2.0 * alpha * u * zb - 0.5 * alpha * zb * zb);
      const Complex fv = phi(z);
      check_finite(fv, "adjoint_transform");
      const Complex term = kernel * fv;
      const double mag = std::abs(term) * std::exp(-std::norm(z) * alpha);
      max_mag = std::max(max_mag, mag);
      if (ix == 0 || iy == 0 || ix == q - 1 || iy == q - 1)
        edge_mag = std::max(edge_mag, mag);
      acc += rule.weights[ix] * rule.weights[iy] * term;
    }
  }
  out.value = c * acc / alpha;
  out.tail_ok = (max_mag == 0.0) || (edge_mag <= 1e-6 * max_mag);
  return out;
}

PlaneQuadValue projection_kernel_apply(double alpha, const PlaneFn& phi, Complex z,
                                       const QuadratureRule& rule) {
  if (alpha <= 0.0)
    throw std::invalid_argument("projection_kernel_apply: alpha must be positive");
  check_rule(rule, "projection_kernel_apply");
  const int q = rule.order;
  const double root_a = std::sqrt(alpha);

  PlaneQuadValue out;
  Complex acc = 0.0;
  double max_mag = 0.0, edge_mag = 0.0;
  for (int ix = 0; ix < q; ++ix) {
    for (int iy = 0; iy < q; ++iy) {
      const Complex zp(rule.nodes[ix] / root_a, rule.nodes[iy] / root_a);
      const Complex fv = phi(zp);
      check_finite(fv, "projection_kernel_apply");
      const Complex term = std::exp(alpha * z * std::conj(zp)) * fv;
      const double mag = std::abs(term) * std::exp(-std::norm(zp) * alpha);
      max_mag = std::max(max_mag, mag);
      if (ix == 0 || iy == 0 || ix == q - 1 || iy == q - 1)
        edge_mag = std::max(edge_mag, mag);
      acc += rule.weights[ix] * rule.weights[iy] * term;
    }
  }
  out.value = acc / kPi;
  out.tail_ok = (max_mag == 0.0) || (edge_mag <= 1e-6 * max_mag);
  return out;
}

Complex gabor_transform(const RealFn& f, double p, double q, const QuadratureRule& rule) {
  check_rule(rule, "gabor_transform");
  const double c = std::pow(kPi, -0.25);
  Complex acc = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double u = rule.nodes[i];
    const Complex fv = f(u);
    check_finite(fv, "gabor_transform");
    const Complex window =
        c * std::exp(Complex(0.0, -p * u)) * std::exp(-0.5 * (u - q) * (u - q));
    acc += rule.weights[i] * std::exp(u * u) * window * fv;
  }
  return acc;
}

Complex transform_alpha(double alpha, const RealFn& f, Complex z, const QuadratureRule& rule) {
  return transform(TransformKernel::zhu(alpha), f, z, rule);
}

}  // namespace xform
}  // namespace bargmann
