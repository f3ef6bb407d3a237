#pragma once

#include "bargmann/fock.hpp"

namespace bargmann {
namespace spectra {

struct SpectrumResult {
  /// Eigenvalues sorted by increasing real part, ties by imaginary part.
  std::vector<Complex> eigenvalues;
  int dim = 0;
  /// Leading eigenvalues stable under the N -> 2N doubling study; 0 when the
  /// study was not run.
  int converged_count = 0;
  /// Eigenvectors (columns), filled only when requested.
  std::vector<CoeffVec> eigenvectors;
};

/// Reggeon couplings: mu A*A + i lambda A*(A + A*)A + lambda' A*^2 A^2
/// + lambda'' A*^3 A^3.
struct GribovParams {
  double mu = 0.0;
  double lambda = 0.0;
  double lambda_prime = 0.0;
  double lambda_second = 0.0;
};

/// All couplings carried in terms (k = 0); zero couplings are dropped.
fock::HamiltonianSpec gribov_spec(const GribovParams& p);

enum class HeunVariant {
  cubic,      // A*(A + A*)A:     column n has (n-1)sqrt(n) above, n sqrt(n+1) below
  diffusion,  // A + A*(A - A*)A: column n has n sqrt(n) above, -n sqrt(n+1) below
};

fock::HamiltonianSpec heun_spec(HeunVariant v = HeunVariant::cubic);

/// Dense complexified eigensolve: Hessenberg reduction + shifted QR.
/// Eigenvectors (inverse iteration) on request; residuals meet
/// ||Mv - sigma v|| <= 1e-8 ||M||.
SpectrumResult eigen_complex(const fock::BandedMatrix& m, bool with_vectors = false);

/// Eigenvalues at truncation n with a doubling study to 2n filling
/// converged_count (leading run of eigenvalues agreeing within tol).
SpectrumResult eigen_doubled(const fock::HamiltonianSpec& spec, int n, double tol = 1e-6);

/// Certified diagonal-comparison constant: C_eps(N) = max_n max(0, u(n) -
/// eps lambda_{n,k}) with per-row weight u(n) from the term magnitudes, so
/// |<P phi, phi>| <= eps <S_k phi, phi> + C_eps ||phi||^2 on the truncation.
/// spec.k > 0 and max_degree <= 2k-1 required.
double domination_profile(const fock::HamiltonianSpec& spec, double eps, int n);

struct SubordinationReport {
  double ratio = 0.0;  // sup_n ||P e_n|| / ||S_k e_n||^{1/2}
  int argmax_n = 0;
};

/// Requires max_degree(spec.terms) <= spec.k; sup over basis vectors e_n,
/// n in [k, N).
SubordinationReport subordination_ratio(const fock::HamiltonianSpec& spec, int n);

struct InvertibilityReport {
  double margin = 0.0;        // smallest singular value of (M + beta I)
  double neumann_norm = 0.0;  // ||P (S_k + beta I)^{-1}|| estimate
  bool contraction = false;   // neumann_norm < 1
};

InvertibilityReport invertibility_margin(const fock::HamiltonianSpec& spec, double beta, int n);

/// max_n 1/(lambda_{n,k} + beta) = 1/beta, attained where lambda vanishes.
double sk_resolvent_norm(int k, double beta);

/// Partial Schatten sum: sum_{n=k}^{N} lambda_{n,k}^{-p}.
double schatten_partial(int k, double p, int n);

/// Smallest eigenvalue of the Hermitian part (M + M^H)/2.
double hermitian_part_min_eig(const fock::BandedMatrix& m);

/// Newton polish on det(M - sigma I) for tridiagonal M (bandwidths <= 1):
/// drives QR eigenvalue estimates to local machine accuracy, which the trace
/// partial sums need when the matrix is strongly graded.  Returns the input
/// unchanged for wider bandwidths.
Complex refine_eigenvalue(const fock::BandedMatrix& m, Complex sigma, int iters = 4);

}  // namespace spectra
}  // namespace bargmann
