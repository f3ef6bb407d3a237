#include "bargmann/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "dense_complex.hpp"

namespace bargmann {
namespace spectra {

using fock::BandedMatrix;
using fock::HamiltonianSpec;
using fock::MonomialTerm;

namespace {

detail::DenseC to_dense(const BandedMatrix& m) {
  detail::DenseC d(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) d(r, c) = m(r, c);
  return d;
}

void sort_by_real(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return std::abs(a) < std::abs(b);
  });
}

}  // namespace

HamiltonianSpec gribov_spec(const GribovParams& p) {
  HamiltonianSpec spec;
  spec.k = 0;
  auto push = [&spec](int i, int j, Complex a) {
    if (a != Complex(0.0)) spec.terms.push_back({i, j, a});
  };
  push(3, 3, p.lambda_second);
  push(2, 2, p.lambda_prime);
  push(1, 1, p.mu);
  push(1, 2, Complex(0.0, p.lambda));
  push(2, 1, Complex(0.0, p.lambda));
  return spec;
}

HamiltonianSpec heun_spec(HeunVariant v) {
  HamiltonianSpec spec;
  spec.k = 0;
  if (v == HeunVariant::cubic) {
    spec.terms = {{1, 2, 1.0}, {2, 1, 1.0}};
  } else {
    spec.terms = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 1, -1.0}};
  }
  return spec;
}

SpectrumResult eigen_complex(const BandedMatrix& m, bool with_vectors) {
  SpectrumResult out;
  out.dim = m.dim();
  detail::DenseC d = to_dense(m);
  if (m.lower_bandwidth() > 1) detail::hessenberg_reduce(d);
  out.eigenvalues = detail::hessenberg_eigenvalues(std::move(d));
  sort_by_real(out.eigenvalues);

  if (with_vectors) {
    const double mnorm = std::max(m.inf_norm(), 1e-300);
    out.eigenvectors.resize(out.eigenvalues.size());
    for (size_t j = 0; j < out.eigenvalues.size(); ++j) {
      // inverse iteration at a perturbed shift
      const Complex sigma = out.eigenvalues[j] + Complex(1e-11 * mnorm, 1e-12 * mnorm);
      detail::DenseC shifted = to_dense(m);
      for (int i = 0; i < m.dim(); ++i) shifted(i, i) -= sigma;
      detail::LU lu(std::move(shifted));
      CoeffVec v(m.dim());
      for (int i = 0; i < m.dim(); ++i)
        v[i] = Complex(std::cos(0.7 * (i + 1) + 0.3 * static_cast<double>(j)),
                       std::sin(1.3 * (i + 1) - 0.1 * static_cast<double>(j)));
      for (int it = 0; it < 3; ++it) {
        lu.solve(v);
        const double nrm = fock::norm(v);
        if (nrm == 0.0) throw NumericalError("eigen_complex: inverse iteration collapse");
        for (auto& x : v) x /= nrm;
      }
      out.eigenvectors[j] = std::move(v);
    }
  }
  return out;
}

SpectrumResult eigen_doubled(const HamiltonianSpec& spec, int n, double tol) {
  SpectrumResult base = eigen_complex(fock::build_matrix(spec, n));
  const SpectrumResult twice = eigen_complex(fock::build_matrix(spec, 2 * n));
  int count = 0;
  while (count < n) {
    const Complex a = base.eigenvalues[count];
    const Complex b = twice.eigenvalues[count];
    if (std::abs(a - b) > tol * std::max(1.0, std::abs(b))) break;
    ++count;
  }
  base.converged_count = count;
  return base;
}

double domination_profile(const HamiltonianSpec& spec, double eps, int n) {
  if (spec.k <= 0)
    throw std::invalid_argument("domination_profile: spec.k must be positive");
  if (spec.max_degree() >= 2 * spec.k)
    throw std::invalid_argument("domination_profile: requires m <= 2k-1");
  if (eps <= 0.0) throw std::invalid_argument("domination_profile: eps must be positive");
  if (n < 1) throw std::invalid_argument("domination_profile: n must be >= 1");

  // |<P phi, phi>| <= sum_n u(n) |c_n|^2 with u(n) collecting half of each
  // matrix element's weight at its row and column index
  std::vector<double> u(n, 0.0);
  for (const auto& t : spec.terms) {
    const double mag = std::abs(t.a);
    if (mag == 0.0) continue;
    for (int c = 0; c < n; ++c) {
      const int r = c + t.i - t.j;
      if (r < 0 || r >= n) continue;
      const double w = 0.5 * mag * fock::monomial_entry(c, t.i, t.j);
      u[c] += w;
      u[r] += w;
    }
  }
  double c_eps = 0.0;
  for (int m = 0; m < n; ++m)
    c_eps = std::max(c_eps, u[m] - eps * fock::falling_factorial(m, spec.k));
  return std::max(c_eps, 0.0);
}

SubordinationReport subordination_ratio(const HamiltonianSpec& spec, int n) {
  const int k = spec.k;
  if (k < 1) throw std::invalid_argument("subordination_ratio: spec.k must be >= 1");
  if (spec.max_degree() > k)
    throw std::invalid_argument("subordination_ratio: requires max term degree <= k");
  SubordinationReport rep;
  for (int m = k; m < n; ++m) {
    // ||P e_m||^2: group amplitudes by target index shift
    double norm2 = 0.0;
    std::vector<std::pair<int, Complex>> shifts;
    for (const auto& t : spec.terms) {
      const double coeff = fock::monomial_entry(m, t.i, t.j);
      if (coeff == 0.0) continue;
      const int d = t.i - t.j;
      bool found = false;
      for (auto& s : shifts)
        if (s.first == d) {
          s.second += t.a * coeff;
          found = true;
        }
      if (!found) shifts.emplace_back(d, t.a * coeff);
    }
    for (const auto& s : shifts) norm2 += std::norm(s.second);
    const double ratio = std::sqrt(norm2 / fock::falling_factorial(m, k));
    if (ratio > rep.ratio) {
      rep.ratio = ratio;
      rep.argmax_n = m;
    }
  }
  return rep;
}

InvertibilityReport invertibility_margin(const HamiltonianSpec& spec, double beta, int n) {
  if (beta <= 0.0) throw std::invalid_argument("invertibility_margin: beta must be positive");
  InvertibilityReport rep;

  BandedMatrix full = fock::build_matrix(spec, n);
  detail::DenseC shifted = to_dense(full);
  for (int i = 0; i < n; ++i) shifted(i, i) += beta;
  rep.margin = detail::smallest_singular_value(shifted);

  // ||P (S_k + beta I)^{-1}||: terms-only matrix against the diagonal resolvent
  HamiltonianSpec terms_only = spec;
  terms_only.k = 0;
  BandedMatrix p = fock::build_matrix(terms_only, n);
  detail::DenseC x(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      x(r, c) = p(r, c) / (fock::falling_factorial(c, spec.k) + beta);
  rep.neumann_norm = detail::largest_singular_value(x);
  rep.contraction = rep.neumann_norm < 1.0;
  return rep;
}

double sk_resolvent_norm(int k, double beta) {
  if (k < 1) throw std::invalid_argument("sk_resolvent_norm: k must be >= 1");
  if (beta <= 0.0) throw std::invalid_argument("sk_resolvent_norm: beta must be positive");
  return 1.0 / beta;  // attained on e_n with n < k where lambda_{n,k} = 0
}

double schatten_partial(int k, double p, int n) {
  if (k < 1) throw std::invalid_argument("schatten_partial: k must be >= 1");
  if (p <= 0.0) throw std::invalid_argument("schatten_partial: p must be positive");
  double s = 0.0;
  for (int m = k; m <= n; ++m) s += std::pow(fock::falling_factorial(m, k), -p);
  return s;
}

Complex refine_eigenvalue(const BandedMatrix& m, Complex sigma, int iters) {
  if (m.lower_bandwidth() > 1 || m.upper_bandwidth() > 1) return sigma;
  const int n = m.dim();
  for (int it = 0; it < iters; ++it) {
    // characteristic-polynomial recurrence with the logarithmic derivative
    // carried alongside; both rescaled together so the ratio stays exact
    Complex p_prev = 1.0, p = m(0, 0) - sigma;
    Complex d_prev = 0.0, d = -1.0;
    for (int i = 1; i < n; ++i) {
      const Complex a = m(i, i) - sigma;
      const Complex bc = m(i - 1, i) * m(i, i - 1);
      const Complex p_next = a * p - bc * p_prev;
      const Complex d_next = -p + a * d - bc * d_prev;
      p_prev = p;
      p = p_next;
      d_prev = d;
      d = d_next;
      const double mag = std::max(std::abs(p), std::abs(d));
      if (mag > 1e200 || (mag > 0.0 && mag < 1e-200)) {
        const double s = 1.0 / mag;
        p_prev *= s;
        p *= s;
        d_prev *= s;
        d *= s;
      }
    }
    if (d == Complex(0.0)) break;
    const Complex step = p / d;
    sigma -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(sigma))) break;
  }
  return sigma;
}

double hermitian_part_min_eig(const BandedMatrix& m) {
  const int n = m.dim();
  BandedMatrix h(n, std::max(m.lower_bandwidth(), m.upper_bandwidth()),
                 std::max(m.lower_bandwidth(), m.upper_bandwidth()));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      if (v != Complex(0.0)) h.add(r, c, v);
    }
  SpectrumResult res = eigen_complex(h);
  double best = res.eigenvalues.empty() ? 0.0 : res.eigenvalues.front().real();
  for (const auto& ev : res.eigenvalues) best = std::min(best, ev.real());
  return best;
}

}  // namespace spectra
}  // namespace bargmann
