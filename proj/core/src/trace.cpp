#include "bargmann/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bargmann/spectra.hpp"

namespace bargmann {
namespace trace {

using fock::BandedMatrix;
using fock::HamiltonianSpec;

Complex diagonal_correction(const HamiltonianSpec& b, int n) {
  Complex acc = 0.0;
  for (const auto& t : b.terms)
    if (t.i == t.j) acc += t.a * fock::falling_factorial(n, t.i);
  return acc;
}

TraceSeries first_order_series(int k, const HamiltonianSpec& b, int n_trunc, int n_max) {
  if (k < 1) throw std::invalid_argument("first_order_series: k must be >= 1");
  if (n_max >= n_trunc)
    throw std::invalid_argument("first_order_series: n_max must be below the truncation");
  HamiltonianSpec full = b;
  full.k = k;
  const fock::BandedMatrix m = fock::build_matrix(full, n_trunc);
  spectra::SpectrumResult res = spectra::eigen_complex(m);
  // graded truncations leave the QR values with absolute error ~eps*||M||;
  // polish the leading block the sums actually use
  for (int j = 0; j <= n_max; ++j)
    res.eigenvalues[j] = spectra::refine_eigenvalue(m, res.eigenvalues[j]);
  std::sort(res.eigenvalues.begin(), res.eigenvalues.begin() + n_max + 1,
            [](Complex a, Complex b2) { return a.real() < b2.real(); });

  TraceSeries out;
  out.partial_sums.reserve(n_max + 1);
  Complex acc = 0.0;
  for (int j = 0; j <= n_max; ++j) {
    acc += res.eigenvalues[j] - fock::falling_factorial(j, k) - diagonal_correction(b, j);
    out.partial_sums.push_back(acc);
  }
  return out;
}

std::vector<double> choose_contours(int k, int count) {
  if (k < 1) throw std::invalid_argument("choose_contours: k must be >= 1");
  if (count < 1) throw std::invalid_argument("choose_contours: count must be >= 1");
  std::vector<double> r(count);
  for (int s = 0; s < count; ++s)
    r[s] = 0.5 * (fock::falling_factorial(s, k) + fock::falling_factorial(s + 1, k));
  return r;
}

namespace {

// Trace of the first l Neumann terms at one quadrature point sigma.
// M = B R_0(sigma) keeps B's bandwidth; M^t widens to t*bw, so all products
// run over band windows only.
Complex neumann_trace(const BandedMatrix& bmat, const std::vector<double>& lambda, int l,
                      Complex sigma) {
  const int n = bmat.dim();
  const int bw = std::max(bmat.lower_bandwidth(), bmat.upper_bandwidth());

  std::vector<Complex> m(static_cast<size_t>(n) * n, Complex(0.0));
  for (int r = 0; r < n; ++r) {
    const int c0 = std::max(0, r - bw), c1 = std::min(n - 1, r + bw);
    for (int c = c0; c <= c1; ++c)
      m[static_cast<size_t>(r) * n + c] = bmat(r, c) / (lambda[c] - sigma);
  }

  Complex total = 0.0;
  std::vector<Complex> power = m;  // M^1
  int pbw = bw;
  for (int t = 1; t <= l; ++t) {
    if (t > 1) {
      const int nbw = std::min(pbw + bw, n - 1);
      std::vector<Complex> next(static_cast<size_t>(n) * n, Complex(0.0));
      for (int r = 0; r < n; ++r) {
        const int c0 = std::max(0, r - nbw), c1 = std::min(n - 1, r + nbw);
        for (int c = c0; c <= c1; ++c) {
          const int q0 = std::max({0, r - pbw, c - bw});
          const int q1 = std::min({n - 1, r + pbw, c + bw});
          Complex acc = 0.0;
          for (int q = q0; q <= q1; ++q)
            acc += power[static_cast<size_t>(r) * n + q] * m[static_cast<size_t>(q) * n + c];
          next[static_cast<size_t>(r) * n + c] = acc;
        }
      }
      power = std::move(next);
      pbw = nbw;
    }
    Complex tr = 0.0;
    for (int r = 0; r < n; ++r) tr += power[static_cast<size_t>(r) * n + r];
    const double sign = (t % 2 == 1) ? 1.0 : -1.0;
    total += sign / static_cast<double>(t) * tr;
  }
  return total;
}

Complex contour_value(int k, const HamiltonianSpec& b, int l, double radius, int samples,
                      int n) {
  std::vector<double> lambda(n);
  for (int m = 0; m < n; ++m) lambda[m] = fock::falling_factorial(m, k);
  const BandedMatrix bmat = fock::build_matrix(b, n);

  Complex acc = 0.0;
  for (int q = 0; q < samples; ++q) {
    const double th = 2.0 * std::numbers::pi * q / samples;
    const Complex sigma = radius * std::exp(Complex(0.0, th));
    acc += neumann_trace(bmat, lambda, l, sigma) * std::exp(Complex(0.0, th));
  }
  // (1/2 pi i) times the counterclockwise integral, as the trapezoid rule of
  // (1/2pi) int_0^{2pi} f(r e^{i th}) r e^{i th} dth
  return acc * (radius / samples);
}

}  // namespace

Complex contour_correction(int k, const HamiltonianSpec& b, int l, double radius, int samples) {
  if (k < 1) throw std::invalid_argument("contour_correction: k must be >= 1");
  if (l < 1) throw std::invalid_argument("contour_correction: l must be >= 1");
  if (samples < 256) throw std::invalid_argument("contour_correction: samples must be >= 256");
  if (radius <= 0.0) throw std::invalid_argument("contour_correction: radius must be positive");

  // reject radii colliding with reference eigenvalues
  int inside = 0;
  while (fock::falling_factorial(inside, k) < radius) ++inside;
  const double lam_in = fock::falling_factorial(inside - 1, k);
  const double lam_out = fock::falling_factorial(inside, k);
  if (std::abs(radius - lam_in) < 1e-9 || std::abs(radius - lam_out) < 1e-9)
    throw NumericalError("contour_correction: radius collides with a reference eigenvalue");

  // refine the trapezoid count so the geometric error term of the nearest
  // poles drops below ~1e-12
  const double ratio = std::min(radius / std::max(lam_in, 1e-300), lam_out / radius);
  int eff = samples;
  if (ratio > 1.0) {
    const double needed = (12.0 + std::log10(std::max(1.0, lam_out))) * std::numbers::ln10 /
                          std::log(ratio);
    eff = std::max(eff, static_cast<int>(needed) + 1);
  }
  eff = std::min(eff, 65536);

  int n = std::max(2 * inside, 16);
  Complex value = contour_value(k, b, l, radius, eff, n);
  for (int round = 0; round < 6; ++round) {
    const Complex refined = contour_value(k, b, l, radius, eff, 2 * n);
    const bool settled = std::abs(refined - value) <= 1e-10 * std::max(1.0, std::abs(refined));
    value = refined;
    n *= 2;
    if (settled) return value;
  }
  throw NumericalError("contour_correction: truncation tail failed to settle below 1e-10");
}

TraceSeries regularized_trace_check(const TraceConfig& cfg, const HamiltonianSpec& b) {
  if (cfg.k < 1) throw std::invalid_argument("regularized_trace_check: k must be >= 1");
  const int m = b.max_degree();
  if (m > 2 * cfg.k - 3)
    throw std::invalid_argument(
        "regularized_trace_check: inadmissible config, requires m <= 2k-3");
  if (cfg.l < 2 * (cfg.k - 1))
    throw std::invalid_argument("regularized_trace_check: requires l >= 2(k-1)");
  if (cfg.contour_count < 1)
    throw std::invalid_argument("regularized_trace_check: contour_count must be >= 1");
  if (cfg.truncation < 4)
    throw std::invalid_argument("regularized_trace_check: truncation too small");

  const int s0 = cfg.s_begin >= 0 ? cfg.s_begin : cfg.k;

  HamiltonianSpec full = b;
  full.k = cfg.k;
  const fock::BandedMatrix hmat = fock::build_matrix(full, cfg.truncation);
  spectra::SpectrumResult res = spectra::eigen_complex(hmat);
  {
    // polish the eigenvalues that enter the partial sums
    int reach = 0;
    const double r_top = 0.5 * (fock::falling_factorial(s0 + cfg.contour_count, cfg.k) +
                                fock::falling_factorial(s0 + cfg.contour_count + 1, cfg.k));
    while (reach < cfg.truncation && fock::falling_factorial(reach, cfg.k) < r_top) ++reach;
    reach = std::min(reach + 2, cfg.truncation);
    for (int j = 0; j < reach; ++j)
      res.eigenvalues[j] = spectra::refine_eigenvalue(hmat, res.eigenvalues[j]);
    std::sort(res.eigenvalues.begin(), res.eigenvalues.begin() + reach,
              [](Complex a, Complex b2) { return a.real() < b2.real(); });
  }

  TraceSeries out;
  for (int s = s0; s < s0 + cfg.contour_count; ++s) {
    const double r = 0.5 * (fock::falling_factorial(s, cfg.k) +
                            fock::falling_factorial(s + 1, cfg.k));
    int inside = 0;
    while (fock::falling_factorial(inside, cfg.k) < r) ++inside;
    if (inside > static_cast<int>(res.eigenvalues.size()))
      throw std::invalid_argument("regularized_trace_check: truncation below contour reach");

    Complex partial = 0.0;
    for (int j = 0; j < inside; ++j)
      partial += res.eigenvalues[j] - fock::falling_factorial(j, cfg.k);
    const Complex corr = contour_correction(cfg.k, b, cfg.l, r, cfg.contour_samples);

    out.radii.push_back(r);
    out.partial_sums.push_back(partial);
    out.values.push_back(partial + corr);
  }
  return out;
}

}  // namespace trace
}  // namespace bargmann
