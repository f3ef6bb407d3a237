#pragma once

#include <functional>

#include "bargmann/fock.hpp"
#include "bargmann/quadrature.hpp"

namespace bargmann {
namespace xform {

using RealFn = std::function<Complex(double)>;
using PlaneFn = std::function<Complex(Complex)>;

/// Integral kernel of the transform.  The classical (Bargmann) kernel is
/// pi^{-1/4} exp(-u^2/2 + sqrt(2) u z - z^2/2); the Zhu alpha-family is
/// (2 alpha / pi)^{1/4} exp(-alpha u^2 + 2 alpha u z - (alpha/2) z^2).
struct TransformKernel {
  double alpha = 0.5;
  bool classical_form = true;

  static TransformKernel classical() { return {0.5, true}; }
  static TransformKernel zhu(double alpha);

  double constant() const;
};

/// Kernel value A(z, u).
Complex bargmann_kernel(const TransformKernel& kern, Complex z, double u);

/// Quadrature value of int A(z,u) conj(A(w,u)) du; exactly e^{z conj(w)}
/// for the classical kernel.
Complex kernel_gram(const TransformKernel& kern, Complex z, Complex w,
                    const QuadratureRule& rule);

/// B[f](z) = int A(z,u) f(u) du by Gauss-Hermite with weight re-expansion.
Complex transform(const TransformKernel& kern, const RealFn& f, Complex z,
                  const QuadratureRule& rule);

/// Classical transform of f given by Hermite-basis coefficients: exact
/// coefficient pass-through B[sum c_n h_n] = sum c_n e_n, evaluated at z.
Complex transform(const CoeffVec& hermite_coeffs, Complex z);

/// Expansion coefficients a_0..a_{n-1} of an entire function against e_n,
/// recovered from m-point trapezoid samples on the circle |z| = r.
CoeffVec disk_coefficients(const PlaneFn& phi, int n, double r = 1.0, int m = 256);

struct PlaneQuadValue {
  Complex value = 0.0;
  /// false when the integrand carries visible weight at the edge of the grid.
  bool tail_ok = true;
};

/// Adjoint transform (B*_alpha phi)(u) =
/// (2^{1/4} alpha^{5/4} / pi^{5/4}) int N(conj z, u) phi(z) e^{-alpha|z|^2} dxdy
/// over a tensor Gauss-Hermite grid.
PlaneQuadValue adjoint_transform(double alpha, const PlaneFn& phi, double u,
                                 const QuadratureRule& rule);

/// Projection (B B* phi)(z) = (alpha/pi) int e^{alpha z conj(z')} phi(z')
/// e^{-alpha |z'|^2} dx'dy'; idempotent on Bargmann elements.
PlaneQuadValue projection_kernel_apply(double alpha, const PlaneFn& phi, Complex z,
                                       const QuadratureRule& rule);

/// Gabor transform W(f)(p,q) = int conj(g_{p,q}(u)) f(u) du with the window
/// g_{p,q}(u) = pi^{-1/4} e^{i p u} e^{-(u-q)^2/2}.
Complex gabor_transform(const RealFn& f, double p, double q, const QuadratureRule& rule);

/// Zhu alpha-family transform B_alpha[f](z) = c_alpha int N(z,u) f(u) du.
Complex transform_alpha(double alpha, const RealFn& f, Complex z, const QuadratureRule& rule);

}  // namespace xform
}  // namespace bargmann
