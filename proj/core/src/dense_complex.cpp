#include "dense_complex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bargmann {
namespace detail {

double DenseC::frobenius() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

std::vector<Complex> DenseC::apply(const std::vector<Complex>& v) const {
  std::vector<Complex> out(n_, Complex(0.0));
  for (int r = 0; r < n_; ++r) {
    Complex acc = 0.0;
    for (int c = 0; c < n_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

DenseC DenseC::adjoint() const {
  DenseC out(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

void hessenberg_reduce(DenseC& h) {
  const int n = h.dim();
  for (int k = 0; k < n - 2; ++k) {
    // Householder vector annihilating column k below row k+1
    double colnorm = 0.0;
    for (int i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0) continue;
    const Complex pivot = h(k + 1, k);
    const double pmag = std::abs(pivot);
    const Complex phase = (pmag == 0.0) ? Complex(1.0) : pivot / pmag;
    const Complex alpha = -phase * colnorm;

    std::vector<Complex> v(n, Complex(0.0));
    v[k + 1] = pivot - alpha;
    for (int i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;

    // H <- (I - 2 v v^H / |v|^2) H (I - 2 v v^H / |v|^2)
    for (int c = 0; c < n; ++c) {
      Complex dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, c);
      dot *= 2.0 / vnorm2;
      for (int i = k + 1; i < n; ++i) h(i, c) -= dot * v[i];
    }
    for (int r = 0; r < n; ++r) {
      Complex dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += h(r, i) * v[i];
      dot *= 2.0 / vnorm2;
      for (int i = k + 1; i < n; ++i) h(r, i) -= dot * std::conj(v[i]);
    }
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

namespace {

// Givens rotation [[c, s], [-conj(s), c]] with real c zeroing g against f.
void make_givens(Complex f, Complex g, double& c, Complex& s) {
  if (g == Complex(0.0)) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (f == Complex(0.0)) {
    c = 0.0;
    s = std::conj(g) / std::abs(g);
    return;
  }
  const double fa = std::abs(f), ga = std::abs(g);
  const double r = std::hypot(fa, ga);
  c = fa / r;
  s = (f / fa) * std::conj(g) / r;
}

Complex wilkinson_shift(const DenseC& h, int hi) {
  // eigenvalue of the trailing 2x2 closest to h(hi,hi)
  const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1), d = h(hi, hi);
  const Complex tr = a + d;
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
  return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

}  // namespace

std::vector<Complex> hessenberg_eigenvalues(DenseC h, int max_sweeps_per_eig) {
  const int n = h.dim();
  std::vector<Complex> eig(n);
  if (n == 1) {
    eig[0] = h(0, 0);
    return eig;
  }
  const double eps = 1e-15;
  int hi = n - 1;
  int stall = 0;
  long budget = static_cast<long>(max_sweeps_per_eig) * n + 100;

  while (hi >= 0) {
    if (--budget < 0)
      throw NumericalError("eigen_complex: QR iteration failed to converge at eigenvalue index " +
                           std::to_string(hi));
    // deflate converged trailing entries
    while (hi > 0) {
      const double off = std::abs(h(hi, hi - 1));
      const double diag = std::abs(h(hi - 1, hi - 1)) + std::abs(h(hi, hi));
      if (off <= eps * (diag + 1e-300)) {
        h(hi, hi - 1) = 0.0;
        eig[hi] = h(hi, hi);
        --hi;
        stall = 0;
      } else {
        break;
      }
    }
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    // find the active block [lo, hi]
    int lo = hi;
    while (lo > 0) {
      const double off = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (off <= eps * (diag + 1e-300)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }

    Complex shift = wilkinson_shift(h, hi);
    ++stall;
    if (stall % 12 == 0) {
      // exceptional shift to break cycles
      shift = h(hi, hi) + Complex(1.5 * std::abs(h(hi, hi - 1)), 0.0);
    }

    // explicit shifted QR sweep on the active block via Givens rotations
    const int m = hi - lo + 1;
    std::vector<double> cs(m - 1);
    std::vector<Complex> sn(m - 1);
    for (int i = lo; i < hi; ++i) h(i, i) -= shift;
    h(hi, hi) -= shift;
    for (int i = lo; i < hi; ++i) {
      double c;
      Complex s;
      make_givens(h(i, i), h(i + 1, i), c, s);
      cs[i - lo] = c;
      sn[i - lo] = s;
      for (int col = i; col <= hi; ++col) {
        const Complex t1 = h(i, col), t2 = h(i + 1, col);
        h(i, col) = c * t1 + s * t2;
        h(i + 1, col) = -std::conj(s) * t1 + c * t2;
      }
    }
    for (int i = lo; i < hi; ++i) {
      const double c = cs[i - lo];
      const Complex s = sn[i - lo];
      const int rmax = std::min(hi, i + 1);
      for (int row = lo; row <= rmax; ++row) {
        const Complex t1 = h(row, i), t2 = h(row, i + 1);
        h(row, i) = c * t1 + std::conj(s) * t2;
        h(row, i + 1) = -s * t1 + c * t2;
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  return eig;
}

LU::LU(DenseC m) : lu_(std::move(m)), piv_(lu_.dim()) {
  const int n = lu_.dim();
  for (int i = 0; i < n; ++i) piv_[i] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    if (best == 0.0) {
      singular = true;
      lu_(k, k) = 1e-300;
    }
    if (p != k) {
      for (int c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(p, c));
      std::swap(piv_[k], piv_[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      const Complex m2 = lu_(i, k) / lu_(k, k);
      lu_(i, k) = m2;
      for (int c = k + 1; c < n; ++c) lu_(i, c) -= m2 * lu_(k, c);
    }
  }
}

void LU::solve(std::vector<Complex>& rhs) const {
  const int n = lu_.dim();
  std::vector<Complex> b(n);
  for (int i = 0; i < n; ++i) b[i] = rhs[piv_[i]];
  for (int i = 1; i < n; ++i)
    for (int k = 0; k < i; ++k) b[i] -= lu_(i, k) * b[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) b[i] -= lu_(i, k) * b[k];
    b[i] /= lu_(i, i);
  }
  rhs = std::move(b);
}

void LU::solve_adjoint(std::vector<Complex>& rhs) const {
  // A = P^T L U  =>  A^H = U^H L^H P; solve U^H y = rhs, L^H z = y, x = P^T z
  const int n = lu_.dim();
  std::vector<Complex> b = rhs;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) b[i] -= std::conj(lu_(k, i)) * b[k];
    b[i] /= std::conj(lu_(i, i));
  }
  for (int i = n - 2; i >= 0; --i)
    for (int k = i + 1; k < n; ++k) b[i] -= std::conj(lu_(k, i)) * b[k];
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[piv_[i]] = b[i];
  rhs = std::move(out);
}

namespace {
std::vector<Complex> seeded_unit(int n) {
  std::vector<Complex> v(n);
  unsigned s = 0x9e3779b9u;
  double nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    s = s * 1664525u + 1013904223u;
    const double re = (s >> 8) / static_cast<double>(1u << 24) - 0.5;
    s = s * 1664525u + 1013904223u;
    const double im = (s >> 8) / static_cast<double>(1u << 24) - 0.5;
    v[i] = Complex(re, im);
    nrm += std::norm(v[i]);
  }
  nrm = std::sqrt(nrm);
  for (auto& x : v) x /= nrm;
  return v;
}
}  // namespace

double smallest_singular_value(const DenseC& a, int iters) {
  const int n = a.dim();
  LU lu(a);
  if (lu.singular) return 0.0;
  std::vector<Complex> v = seeded_unit(n);
  double inv_sigma2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    std::vector<Complex> w = v;
    lu.solve(w);          // w = A^{-1} v
    lu.solve_adjoint(w);  // w = A^{-H} A^{-1} v
    double nrm = 0.0;
    for (const auto& x : w) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return 0.0;
    inv_sigma2 = nrm;
    for (int i = 0; i < n; ++i) v[i] = w[i] / nrm;
  }
  return 1.0 / std::sqrt(inv_sigma2);
}

double largest_singular_value(const DenseC& a, int iters) {
  const int n = a.dim();
  const DenseC ah = a.adjoint();
  std::vector<Complex> v = seeded_unit(n);
  double sigma2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    std::vector<Complex> w = ah.apply(a.apply(v));
    double nrm = 0.0;
    for (const auto& x : w) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return 0.0;
    sigma2 = nrm;
    for (int i = 0; i < n; ++i) v[i] = w[i] / nrm;
  }
  return std::sqrt(sigma2);
}

}  // namespace detail
}  // namespace bargmann
