#pragma once

#include "bargmann/fock.hpp"

namespace bargmann {
namespace trace {

/// Configuration of the regularized trace study for H = S_k + B.
struct TraceConfig {
  int k = 0;
  int l = 1;              // number of Neumann correction terms
  int s_begin = -1;       // first contour index; defaults to k when < 0
  int contour_count = 0;  // number of contours
  int contour_samples = 256;
  int truncation = 0;     // eigensolve dimension for the sigma_j
  double omega = 0.0;     // reporting only; admissibility needs omega < 1/(2k)

  double delta(const fock::HamiltonianSpec& b) const {
    return k > 0 ? static_cast<double>(b.max_degree()) / (2.0 * k) : 0.0;
  }
};

struct TraceSeries {
  std::vector<Complex> partial_sums;
  std::vector<double> radii;
  std::vector<Complex> values;
};

/// <B e_n, e_n> = sum over diagonal monomials (i = j) of a_ii lambda_{n,i}.
Complex diagonal_correction(const fock::HamiltonianSpec& b, int n);

/// S_n = sum_{j<=n} (sigma_j - lambda_{j,k} - <B e_j, e_j>) for n <= n_max,
/// with sigma_j the eigenvalues of S_k + B at truncation n_trunc sorted by
/// real part.
TraceSeries first_order_series(int k, const fock::HamiltonianSpec& b, int n_trunc, int n_max);

/// Midpoint radii r_s = (lambda_{s,k} + lambda_{s+1,k})/2 for s = 0..count-1.
std::vector<double> choose_contours(int k, int count);

/// (1/2 pi i) times the counterclockwise contour integral over |sigma| = radius
/// of Tr[sum_{t=1}^{l} ((-1)^{t-1}/t) (B R_0(sigma))^t], R_0 the diagonal
/// resolvent of S_k.  Trapezoid rule; `samples` is a minimum, refined from the
/// annulus gap so the quadrature reaches ~1e-12.  Truncation doubles until the
/// added tail moves the value by < 1e-10.
Complex contour_correction(int k, const fock::HamiltonianSpec& b, int l, double radius,
                           int samples);

/// For each contour s: sum_{n: lambda_{n,k} < r_s} (sigma_n - lambda_{n,k})
/// plus the contour correction.  Values trend to zero in the admissible
/// regime (m <= 2k-3, l >= 2(k-1)).
TraceSeries regularized_trace_check(const TraceConfig& cfg, const fock::HamiltonianSpec& b);

}  // namespace trace
}  // namespace bargmann
