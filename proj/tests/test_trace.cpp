#include <cmath>
#include <complex>

#include "bargmann/fock.hpp"
#include "bargmann/spectra.hpp"
#include "bargmann/trace.hpp"
#include "doctest.h"

using namespace bargmann;
using fock::HamiltonianSpec;
using trace::TraceConfig;

namespace {

// analytic residue sum of Tr(B R_0) over the counterclockwise circle:
// -(sum of <B e_n, e_n> over lambda_{n,k} < r)
Complex residue_sum(int k, const HamiltonianSpec& b, double r) {
  Complex acc = 0.0;
  for (int n = 0; fock::falling_factorial(n, k) < r; ++n)
    acc += trace::diagonal_correction(b, n);
  return -acc;
}

}  // namespace

TEST_CASE("diagonal_correction picks out i = j terms") {
  HamiltonianSpec number{0, {{1, 1, 1.0}}};
  for (int n : {0, 1, 5, 11}) CHECK(trace::diagonal_correction(number, n) == Complex(n));

  const auto grib = spectra::gribov_spec({0.0, 0.7, 0.0, 0.0});  // i lambda A*(A+A*)A only
  for (int n : {0, 3, 8}) CHECK(trace::diagonal_correction(grib, n) == Complex(0.0));

  HamiltonianSpec ident{0, {{0, 0, 1.0}}};
  CHECK(trace::diagonal_correction(ident, 4) == Complex(1.0));
}

TEST_CASE("first_order_series vanishes for trivial perturbations") {
  HamiltonianSpec zero{0, {}};
  const auto s0 = trace::first_order_series(2, zero, 64, 20);
  for (const auto& v : s0.partial_sums) CHECK(std::abs(v) <= 1e-10);

  for (int k = 1; k <= 3; ++k) {
    HamiltonianSpec shift{0, {{0, 0, Complex(0.35, -0.1)}}};
    const auto s = trace::first_order_series(k, shift, 64, 20);
    for (const auto& v : s.partial_sums) CHECK(std::abs(v) <= 1e-8);
  }
}

TEST_CASE("first_order_series secular rate matches perturbation theory") {
  // For B = mu A*A + i lambda A*(A+A*)A against S_3 the summands settle at
  // lambda^2/3 (second order in the coupling), so the partial sums grow
  // linearly; only the contour-corrected check removes this.
  const double lambda = 0.2;
  const auto b = spectra::gribov_spec({1.0, lambda, 0.0, 0.0});
  const auto ts = trace::first_order_series(3, b, 400, 90);
  for (int n = 60; n <= 90; ++n) {
    const Complex incr = ts.partial_sums[n] - ts.partial_sums[n - 1];
    CHECK(std::abs(incr - lambda * lambda / 3.0) < 2e-5);
  }
}

TEST_CASE("choose_contours midpoints") {
  const auto r1 = trace::choose_contours(1, 5);
  for (int s = 0; s < 5; ++s) CHECK(r1[s] == doctest::Approx(s + 0.5));

  const auto r3 = trace::choose_contours(3, 6);
  CHECK(r3[4] == doctest::Approx(42.0));  // (24 + 60)/2
  for (size_t s = 2; s + 1 < r3.size(); ++s) CHECK(r3[s] < r3[s + 1]);
}

TEST_CASE("contour_correction residue oracle for diagonal perturbations") {
  HamiltonianSpec b{0, {{1, 1, 1.0}}};  // B = A*A, diagonal entries n
  const int k = 2;
  for (int s = 2; s <= 8; ++s) {
    const double r = 0.5 * (fock::falling_factorial(s, k) + fock::falling_factorial(s + 1, k));
    const Complex got = trace::contour_correction(k, b, 1, r, 256);
    const Complex expect = residue_sum(k, b, r);
    CHECK(std::abs(got - expect) <= 1e-8 * std::max(1.0, std::abs(expect)));
  }

  // zero perturbation
  CHECK(std::abs(trace::contour_correction(2, HamiltonianSpec{0, {}}, 3, 7.0, 256)) == 0.0);

  // radius collision
  CHECK_THROWS_AS(trace::contour_correction(2, b, 1, 6.0, 256), NumericalError);

  // trapezoid refinement is stable
  const double r = 0.5 * (fock::falling_factorial(5, 2) + fock::falling_factorial(6, 2));
  const Complex a = trace::contour_correction(2, b, 1, r, 256);
  const Complex c = trace::contour_correction(2, b, 1, r, 512);
  CHECK(std::abs(a - c) <= 1e-9 * std::max(1.0, std::abs(a)));
}

TEST_CASE("contour value is independent of the radius within the gap") {
  const auto b = spectra::gribov_spec({1.0, 0.2, 0.0, 0.0});
  const int k = 3, s = 6;
  const double lo = fock::falling_factorial(s, k), hi = fock::falling_factorial(s + 1, k);
  Complex ref = 0.0;
  bool first = true;
  for (double f : {0.25, 0.4, 0.6, 0.75}) {
    const Complex v = trace::contour_correction(k, b, 4, lo + f * (hi - lo), 256);
    if (!first) CHECK(std::abs(v - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
    ref = v;
    first = false;
  }
}

TEST_CASE("regularized_trace_check gates and shift oracle") {
  TraceConfig cfg;
  cfg.k = 2;
  cfg.l = 2;
  cfg.contour_count = 6;
  cfg.truncation = 64;

  // m = 2k-2 and 2k-1 rejected
  CHECK_THROWS_AS(trace::regularized_trace_check(cfg, HamiltonianSpec{0, {{1, 1, 1.0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(trace::regularized_trace_check(cfg, HamiltonianSpec{0, {{2, 1, 1.0}}}),
                  std::invalid_argument);
  // l too small rejected
  {
    TraceConfig bad = cfg;
    bad.k = 3;
    bad.l = 3;
    CHECK_THROWS_AS(trace::regularized_trace_check(bad, HamiltonianSpec{0, {{0, 0, 1.0}}}),
                    std::invalid_argument);
  }
  // k = 1 leaves no admissible degree at all (m = 0 is already 2k-2)
  {
    TraceConfig k1 = cfg;
    k1.k = 1;
    k1.l = 1;
    CHECK_THROWS_AS(trace::regularized_trace_check(k1, HamiltonianSpec{0, {{0, 0, 1.0}}}),
                    std::invalid_argument);
  }

  // B = 0: identically zero
  const auto z = trace::regularized_trace_check(cfg, HamiltonianSpec{0, {}});
  for (const auto& v : z.values) CHECK(std::abs(v) <= 1e-12);

  // B = c I: exact cancellation of the shift against the t = 1 residues
  for (int k : {2, 3}) {
    TraceConfig sc;
    sc.k = k;
    sc.l = 2 * (k - 1);
    sc.contour_count = 5;
    sc.truncation = 80;
    const auto out =
        trace::regularized_trace_check(sc, HamiltonianSpec{0, {{0, 0, Complex(0.4, 0.15)}}});
    REQUIRE(out.values.size() == 5);
    for (const auto& v : out.values) CHECK(std::abs(v) <= 1e-8);
    for (size_t i = 0; i + 1 < out.radii.size(); ++i) CHECK(out.radii[i] < out.radii[i + 1]);
  }
}

TEST_CASE("regularized_trace_check decays for the admissible Gribov operator") {
  // k = 3, m = 3 = 2k-3, l = 4: the correction absorbs the secular growth
  TraceConfig cfg;
  cfg.k = 3;
  cfg.l = 4;
  cfg.s_begin = 5;
  cfg.contour_count = 8;
  cfg.truncation = 200;
  const auto b = spectra::gribov_spec({1.0, 0.2, 0.0, 0.0});
  const auto out = trace::regularized_trace_check(cfg, b);
  REQUIRE(out.values.size() == 8);
  // magnitude shrinks as the contours grow
  CHECK(std::abs(out.values.back()) < 0.2 * std::abs(out.values.front()));
}

TEST_CASE("perturbation norm bound against the fractional reference") {
  // ||P_m e_n|| <= M (lambda_{n,k} + 1)^{m/2k} with M = sum |c_ij| i^{i/2} 2^{m/2}
  const auto b = spectra::gribov_spec({1.0, 0.2, 0.0, 0.0});
  const int k = 3;
  const double delta = b.max_degree() / (2.0 * k);
  double m_const = 0.0;
  for (const auto& t : b.terms)
    m_const += std::abs(t.a) * std::pow(std::max(1.0, static_cast<double>(t.i)), t.i / 2.0);
  m_const *= std::pow(2.0, 0.5 * b.max_degree());
  for (int n = 0; n <= 2000; ++n) {
    CoeffVec en(n + 4, 0.0);
    en[n] = 1.0;
    const double pnorm = fock::norm(fock::apply_op(b, en));
    const double ref = std::pow(fock::falling_factorial(n, k) + 1.0, delta);
    CHECK(pnorm <= m_const * ref * (1.0 + 1e-12));
  }
}
