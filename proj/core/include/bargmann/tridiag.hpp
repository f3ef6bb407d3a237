#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bargmann {
namespace tridiag {

/// Tridiagonal matrix: diagonal a_1..a_n, superdiagonal b_1..b_{n-1},
/// subdiagonal c_1..c_{n-1} (0-based storage).
struct Tridiag {
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> sub;

  int size() const { return static_cast<int>(diag.size()); }
  bool symmetric() const;
  /// b_i c_i > 0 for all i.
  bool similarity_symmetrizable() const;
};

struct SpectralData {
  std::vector<double> eigenvalues;        // strictly increasing for irreducible input
  std::vector<double> norming_constants;  // first components, sum of squares = 1
  /// Column-major eigenvectors (filled when requested).
  std::vector<std::vector<double>> eigenvectors;
};

/// Entries of the l2 solution of J a~ = 0 with a~_1 = 1; entries[p] = a~_{p+1}.
struct JacobiKernelSolution {
  std::vector<double> entries;
};

/// Characteristic-polynomial sequence P_0..P_n with
/// P_i = (a_i - lambda) P_{i-1} - b_{i-1} c_{i-1} P_{i-2}; P_n = det(T - lambda I).
std::vector<double> char_poly_seq(const Tridiag& t, double lambda);

/// Closed-form inverse via the Usmani theta/phi recurrences.  Row-major dense.
/// Throws NumericalError when det T vanishes within tolerance.
std::vector<std::vector<double>> usmani_inverse(const Tridiag& t);

struct SymmetrizeResult {
  std::vector<double> d;  // positive diagonal of the similarity
  Tridiag s;              // D T D^{-1}, symmetric with off-diagonals sqrt(b_i c_i)
};

/// Requires b_i c_i > 0 for all i.
SymmetrizeResult symmetrize(const Tridiag& t);

/// Symmetric eigensolve: bisection on the Sturm sequence, then inverse
/// iteration.  Eigenvectors are normalized with first component > 0;
/// norming_constants are those first components.  Reducible input is split
/// into irreducible blocks.
SpectralData eigen_sym_tridiag(const Tridiag& s, bool with_vectors = true);

/// Golub intervals [a_k - sigma_k, a_k + sigma_k], sigma_k^2 = b_k^2 + b_{k-1}^2
/// (missing neighbors treated as 0); each contains at least one eigenvalue.
std::vector<std::pair<double, double>> golub_intervals(const Tridiag& s);

/// omega_n = (n+1) sqrt(n), the Jacobi weight of the cubic-oscillator system.
double jacobi_omega(int n);

/// a~_1 = 1, a~_2 = 0, a~_{n+1} = -(sqrt(n(n-1))/(n+1)) a~_{n-1}; even entries 0.
JacobiKernelSolution kernel_solution(int n);

/// Number of eigenvalues of the symmetric matrix strictly below x.
int sturm_count(const Tridiag& s, double x);

/// JSON document {"a": [...], "b": [...], "c": [...]}.
std::string tridiag_to_json(const Tridiag& t);
Tridiag tridiag_from_json(const std::string& text);

}  // namespace tridiag
}  // namespace bargmann
