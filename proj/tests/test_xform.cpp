#include <cmath>
#include <numbers>
#include <random>

#include "bargmann/fock.hpp"
#include "bargmann/quadrature.hpp"
#include "bargmann/transform.hpp"
#include "doctest.h"

using namespace bargmann;
using xform::QuadratureRule;
using xform::TransformKernel;

namespace {

constexpr double kPi = std::numbers::pi;

// quadrature of f against e^{-u^2} with weight re-expansion
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (int q = 0; q < rule.order; ++q)
    acc += rule.weights[q] * std::exp(rule.nodes[q] * rule.nodes[q]) * f(rule.nodes[q]);
  return acc;
}

// int u^{2m} e^{-u^2} du = sqrt(pi) (2m-1)!! / 2^m
double gaussian_moment(int m) {
  double v = std::sqrt(kPi);
  for (int t = 1; t <= m; ++t) v *= (2.0 * t - 1.0) / 2.0;
  return v;
}

xform::RealFn hermite_fn(int n) {
  return [n](double u) { return Complex(xform::hermite_eval(n, u), 0.0); };
}

}  // namespace

TEST_CASE("gauss_hermite basics") {
  const auto r1 = xform::gauss_hermite(1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));

  const auto r2 = xform::gauss_hermite(2);
  double m2 = 0.0;
  for (int q = 0; q < 2; ++q) m2 += r2.weights[q] * r2.nodes[q] * r2.nodes[q];
  CHECK(m2 == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-13));

  for (int q : {1, 3, 8, 64}) {
    const auto r = xform::gauss_hermite(q);
    double total = 0.0;
    for (double w : r.weights) total += w;
    CHECK(total == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    for (int i = 0; i < q; ++i) {
      CHECK(r.nodes[i] == -r.nodes[q - 1 - i]);
      CHECK(r.weights[i] == r.weights[q - 1 - i]);
    }
  }
}

TEST_CASE("gauss_hermite is exact through degree 2Q-1") {
  for (int q : {3, 5, 9}) {
    const auto rule = xform::gauss_hermite(q);
    for (int deg = 0; deg <= 2 * q - 1; ++deg) {
      double acc = 0.0, scale = 1.0;
      for (int i = 0; i < q; ++i) {
        acc += rule.weights[i] * std::pow(rule.nodes[i], deg);
        scale += rule.weights[i] * std::pow(std::abs(rule.nodes[i]), deg);
      }
      const double expect = (deg % 2 == 1) ? 0.0 : gaussian_moment(deg / 2);
      CHECK(std::abs(acc - expect) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("hermite functions: values, parity, orthonormality") {
  CHECK(xform::hermite_eval(1, 0.0) == 0.0);
  CHECK(xform::hermite_eval(0, 0.0) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-14));

  for (int n = 0; n <= 7; ++n)
    for (double u : {0.3, 1.1, 2.4})
      CHECK(xform::hermite_eval(n, -u) ==
            doctest::Approx((n % 2 ? -1.0 : 1.0) * xform::hermite_eval(n, u)).epsilon(1e-12));

  const auto rule = xform::gauss_hermite(16);
  const double h35 = integrate(
      rule, [](double u) { return xform::hermite_eval(3, u) * xform::hermite_eval(5, u); });
  CHECK(std::abs(h35) < 1e-10);
  for (int n = 0; n <= 9; ++n) {
    const double hnn = integrate(
        rule, [n](double u) { return xform::hermite_eval(n, u) * xform::hermite_eval(n, u); });
    CHECK(hnn == doctest::Approx(1.0).epsilon(1e-10));
  }

  const auto all = xform::hermite_all(9, 0.73);
  for (int n = 0; n <= 9; ++n) CHECK(all[n] == doctest::Approx(xform::hermite_eval(n, 0.73)));
}

TEST_CASE("hermite operator eigenvalues 2(n+1)") {
  // <-h_n'' + (1+u^2) h_n, h_n> = 2(n+1)
  const auto rule = xform::gauss_hermite(40);
  for (int n = 0; n <= 6; ++n) {
    const double val = integrate(rule, [n](double u) {
      const double h = xform::hermite_eval(n, u);
      const double op = -xform::hermite_second_derivative(n, u) + (1.0 + u * u) * h;
      return op * h;
    });
    CHECK(val == doctest::Approx(2.0 * (n + 1)).epsilon(1e-6));
  }
}

TEST_CASE("bargmann kernel values") {
  const auto kern = TransformKernel::classical();
  CHECK(xform::bargmann_kernel(kern, 0.0, 0.0).real() ==
        doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-14));
  for (double u : {-1.5, 0.2, 2.0})
    CHECK(xform::bargmann_kernel(kern, 0.0, u).real() ==
          doctest::Approx(xform::hermite_eval(0, u)).epsilon(1e-13));
}

TEST_CASE("kernel gram reproduces exp(z conj w)") {
  const auto kern = TransformKernel::classical();
  const auto rule = xform::gauss_hermite(64);
  CHECK(xform::kernel_gram(kern, 0.0, 0.0, rule).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(xform::kernel_gram(kern, 1.0, 1.0, rule).real() ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(xform::kernel_gram(kern, Complex(0, 1), Complex(0, -1), rule).real() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 25; ++rep) {
    Complex z(u(rng), u(rng)), w(u(rng), u(rng));
    if (std::abs(z) > 2) z *= 2.0 / std::abs(z);
    if (std::abs(w) > 2) w *= 2.0 / std::abs(w);
    const Complex got = xform::kernel_gram(kern, z, w, rule);
    const Complex expect = std::exp(z * std::conj(w));
    CHECK(std::abs(got - expect) <= 1e-8 * std::abs(expect));
  }
}

TEST_CASE("transform sends Hermite functions to monomials") {
  const auto kern = TransformKernel::classical();
  const auto rule = xform::gauss_hermite(64);

  // B[e^{-u^2/2}] = pi^{1/4}
  for (Complex z : {Complex(0.3, 0.0), Complex(0.0, 0.9), Complex(-1.0, 0.7)}) {
    const Complex val = xform::transform(
        kern, [](double u) { return Complex(std::exp(-0.5 * u * u), 0.0); }, z, rule);
    CHECK(std::abs(val - std::pow(kPi, 0.25)) < 1e-10);
  }

  // B[h_n] = e_n through disk coefficients
  for (int n = 0; n <= 8; ++n) {
    const auto coeffs = xform::disk_coefficients(
        [&](Complex z) { return xform::transform(kern, hermite_fn(n), z, rule); }, 12, 1.0);
    for (int m = 0; m < 12; ++m) {
      const double expect = (m == n) ? 1.0 : 0.0;
      CHECK(std::abs(coeffs[m] - expect) < 1e-9);
    }
  }

  // zero function
  const Complex zval =
      xform::transform(kern, [](double) { return Complex(0.0); }, Complex(1.0, 1.0), rule);
  CHECK(std::abs(zval) == 0.0);

  // non-finite samples rejected
  CHECK_THROWS_AS(xform::transform(
                      kern, [](double u) { return Complex(1.0 / (u - u), 0.0); }, 0.0, rule),
                  NumericalError);

  // coefficient pass-through overload
  CoeffVec c{0.0, 0.0, Complex(2.0, -1.0)};
  const Complex direct = xform::transform(c, Complex(0.4, 0.2));
  CHECK(std::abs(direct - Complex(2.0, -1.0) * fock::basis_eval(2, Complex(0.4, 0.2))) < 1e-14);
}

TEST_CASE("transform isometry on a Hermite span") {
  const auto kern = TransformKernel::classical();
  const auto rule = xform::gauss_hermite(64);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    CoeffVec c(9);
    for (auto& x : c) x = Complex(u(rng), u(rng));
    const auto f = [&c](double x) {
      Complex acc = 0.0;
      const auto h = xform::hermite_all(8, x);
      for (int n = 0; n <= 8; ++n) acc += c[n] * h[n];
      return acc;
    };
    double l2 = 0.0;
    for (int q = 0; q < rule.order; ++q)
      l2 += rule.weights[q] * std::exp(rule.nodes[q] * rule.nodes[q]) *
            std::norm(f(rule.nodes[q]));
    const auto coeffs = xform::disk_coefficients(
        [&](Complex z) { return xform::transform(kern, f, z, rule); }, 16, 1.0);
    double bnorm = 0.0;
    for (const auto& a : coeffs) bnorm += std::norm(a);
    CHECK(std::sqrt(bnorm) == doctest::Approx(std::sqrt(l2)).epsilon(1e-8));
  }
}

TEST_CASE("ladder intertwining under the transform") {
  const auto kern = TransformKernel::classical();
  const auto rule = xform::gauss_hermite(64);
  const int top = 10;

  for (int n = 0; n <= 6; ++n) {
    // (z + d/dz) B[h_n] = sqrt(2) B[u h_n]
    const auto lhs = xform::disk_coefficients(
        [&](Complex z) { return xform::transform(kern, hermite_fn(n), z, rule); }, top, 1.0);
    CoeffVec lhs_op(top, 0.0);
    for (int m = 0; m < top; ++m) {
      if (m >= 1) lhs_op[m] += std::sqrt(static_cast<double>(m)) * lhs[m - 1];  // z e_m
      if (m + 1 < top) lhs_op[m] += std::sqrt(m + 1.0) * lhs[m + 1];            // d/dz e_m
    }
    const auto rhs = xform::disk_coefficients(
        [&](Complex z) {
          return xform::transform(
              kern, [n](double u) { return Complex(u * xform::hermite_eval(n, u), 0.0); }, z,
              rule);
        },
        top, 1.0);
    for (int m = 0; m < top; ++m) CHECK(std::abs(lhs_op[m] - std::sqrt(2.0) * rhs[m]) < 1e-8);

    // sqrt(2) z B[h_n] = B[(u - d/du) h_n]
    CoeffVec zb(top, 0.0);
    for (int m = 1; m < top; ++m)
      zb[m] = std::sqrt(2.0) * std::sqrt(static_cast<double>(m)) * lhs[m - 1];
    const auto rhs2 = xform::disk_coefficients(
        [&](Complex z) {
          return xform::transform(
              kern,
              [n](double u) {
                return Complex(u * xform::hermite_eval(n, u) - xform::hermite_derivative(n, u),
                               0.0);
              },
              z, rule);
        },
        top, 1.0);
    for (int m = 0; m < top; ++m) CHECK(std::abs(zb[m] - rhs2[m]) < 1e-8);
  }
}

TEST_CASE("coefficient-space dictionary for multiplication and differentiation") {
  // Through the dilation f(u) -> f(u/sqrt 2), the alpha = 1 dictionary reads
  // mult-by-u ~ (d/dz + z)/2 and d/du ~ (d/dz - z); in classical terms:
  //   B[(u/sqrt 2) h_n]  has coefficients (A + A*)/2 e_n
  //   B[sqrt(2) h_n']    has coefficients (A - A*) e_n
  const auto kern = TransformKernel::classical();
  const auto rule = xform::gauss_hermite(64);
  const int top = 10;
  for (int n = 0; n <= 6; ++n) {
    const auto mult = xform::disk_coefficients(
        [&](Complex z) {
          return xform::transform(
              kern,
              [n](double u) {
                return Complex(u / std::sqrt(2.0) * xform::hermite_eval(n, u), 0.0);
              },
              z, rule);
        },
        top, 1.0);
    const auto deriv = xform::disk_coefficients(
        [&](Complex z) {
          return xform::transform(
              kern,
              [n](double u) {
                return Complex(std::sqrt(2.0) * xform::hermite_derivative(n, u), 0.0);
              },
              z, rule);
        },
        top, 1.0);
    for (int m = 0; m < top; ++m) {
      double expect_mult = 0.0, expect_deriv = 0.0;
      if (m == n - 1) {  // A e_n component
        expect_mult = 0.5 * std::sqrt(static_cast<double>(n));
        expect_deriv = std::sqrt(static_cast<double>(n));
      }
      if (m == n + 1) {  // A* e_n component
        expect_mult = 0.5 * std::sqrt(n + 1.0);
        expect_deriv = -std::sqrt(n + 1.0);
      }
      CHECK(std::abs(mult[m] - expect_mult) < 1e-8);
      CHECK(std::abs(deriv[m] - expect_deriv) < 1e-8);
    }
  }
}

TEST_CASE("adjoint transform inverts and annihilates") {
  const auto rule = xform::gauss_hermite(64);
  const double alpha = 0.5;

  // B*_a B_a h_0 = h_0 at sample points
  for (double u : {-1.2, -0.4, 0.0, 0.7, 1.5}) {
    const auto val = xform::adjoint_transform(
        alpha, [&](Complex z) { return xform::transform_alpha(alpha, hermite_fn(0), z, rule); },
        u, rule);
    CHECK(val.tail_ok);
    CHECK(std::abs(val.value - xform::hermite_eval(0, u)) < 1e-6);
  }

  // B*(conj z) = 0
  for (double u : {-1.0, 0.3, 2.0}) {
    const auto val =
        xform::adjoint_transform(alpha, [](Complex z) { return std::conj(z); }, u, rule);
    CHECK(std::abs(val.value) < 1e-10);
  }

  // B*(0) = 0
  const auto zval =
      xform::adjoint_transform(alpha, [](Complex) { return Complex(0.0); }, 0.5, rule);
  CHECK(std::abs(zval.value) == 0.0);

  // effective support beyond the grid trips the flag
  const auto wide = xform::adjoint_transform(
      alpha, [alpha](Complex z) { return std::exp(0.95 * alpha * std::norm(z)); }, 0.0, rule);
  CHECK_FALSE(wide.tail_ok);
}

TEST_CASE("projection kernel reproduces and annihilates") {
  const auto rule = xform::gauss_hermite(64);
  const double alpha = 1.0;

  for (Complex z : {Complex(0.5, 0.0), Complex(0.0, -0.8), Complex(0.6, 0.6)}) {
    const auto val = xform::projection_kernel_apply(
        alpha, [](Complex w) { return fock::basis_eval(2, w); }, z, rule);
    CHECK(val.tail_ok);
    CHECK(std::abs(val.value - fock::basis_eval(2, z)) < 1e-6);
  }
  for (Complex z : {Complex(0.2, 0.1), Complex(-0.5, 0.4)}) {
    const auto val =
        xform::projection_kernel_apply(alpha, [](Complex w) { return std::conj(w); }, z, rule);
    CHECK(std::abs(val.value) < 1e-8);
    const auto zero =
        xform::projection_kernel_apply(alpha, [](Complex) { return Complex(0.0); }, z, rule);
    CHECK(std::abs(zero.value) == 0.0);
  }
}

TEST_CASE("gabor transform and the Bargmann relation") {
  const auto rule = xform::gauss_hermite(64);

  // self-overlap of the window
  const Complex self = xform::gabor_transform(
      [](double u) { return Complex(std::pow(kPi, -0.25) * std::exp(-0.5 * u * u), 0.0); }, 0.0,
      0.0, rule);
  CHECK(std::abs(self - 1.0) < 1e-12);

  const Complex zero =
      xform::gabor_transform([](double) { return Complex(0.0); }, 0.7, -0.4, rule);
  CHECK(std::abs(zero) == 0.0);

  // B(f)((q - ip)/sqrt 2) = pi^{-1/4} e^{(p^2+q^2+2ipq)/4} P^{1/2}(f)(p,q)
  // with P^{1/2} = pi^{1/4} * Gabor
  const auto kern = TransformKernel::classical();
  const double pts[5][2] = {{0.0, 0.0}, {0.5, -0.3}, {1.0, 1.0}, {-0.8, 0.2}, {0.3, 1.2}};
  for (const auto& pq : pts) {
    const double p = pq[0], q = pq[1];
    const Complex z = Complex(q, -p) / std::sqrt(2.0);
    const Complex lhs = xform::transform(kern, hermite_fn(1), z, rule);
    const Complex fbi = std::pow(kPi, 0.25) * xform::gabor_transform(hermite_fn(1), p, q, rule);
    const Complex rhs =
        std::pow(kPi, -0.25) * std::exp(Complex(0.25 * (p * p + q * q), 0.5 * p * q)) * fbi;
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("reproducing kernel property") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int deg = 40;
  for (int rep = 0; rep < 10; ++rep) {
    CoeffVec phi(deg + 1, 0.0);
    for (int n = 0; n <= 5; ++n) phi[n] = Complex(u(rng), u(rng));
    const Complex z(1.4 * u(rng), 1.4 * u(rng));
    CoeffVec kz(deg + 1);
    for (int n = 0; n <= deg; ++n) kz[n] = std::conj(fock::basis_eval(n, z));
    Complex direct = 0.0;
    for (int n = 0; n <= 5; ++n) direct += phi[n] * fock::basis_eval(n, z);
    CHECK(std::abs(fock::inner(phi, kz) - direct) < 1e-10);
  }
}
