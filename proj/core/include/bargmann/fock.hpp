#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann {

using Complex = std::complex<double>;

/// Coefficient vector (a_0..a_{N-1}) against the orthonormal basis
/// e_n(z) = z^n / sqrt(n!).  Plain l2 semantics: ||phi||^2 = sum |a_n|^2.
using CoeffVec = std::vector<Complex>;

/// Thrown when an iterative method fails to converge or a numerical
/// contract (contour collision, singular pivot) is violated.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace fock {

/// e_n(z) = z^n / sqrt(n!), evaluated through log-gamma so large n
/// neither overflows nor loses the exponent.
Complex basis_eval(int n, Complex z);

/// lambda_{n,k} = n(n-1)...(n-k+1); 0 for k > n, 1 for k = 0.
double falling_factorial(int n, int k);

/// Same product in exact integer arithmetic (fits for k <= 16 at n <= 200).
unsigned __int128 falling_factorial_exact(int n, int k);

/// alpha_{n,i,j} = sqrt(lambda_{n+i-j,i} * lambda_{n,j}) for j <= n, else 0.
/// Coefficient of e_{n+i-j} in A*^i A^j e_n.
double monomial_entry(int n, int i, int j);

struct MonomialTerm {
  int i = 0;  // creation power
  int j = 0;  // annihilation power
  Complex a = 0.0;
};

/// H = S_k + sum a_ij A*^i A^j with S_k = A*^k A^k (unit coefficient,
/// absent when k = 0).
struct HamiltonianSpec {
  int k = 0;
  std::vector<MonomialTerm> terms;

  /// max(i+j) over terms; 0 when empty.
  int max_degree() const;
  /// largest creation/annihilation power appearing anywhere (incl. S_k).
  int max_power() const;
  /// m <= 2k-1 regime of the domination results.
  bool dominated() const { return k > 0 && max_degree() <= 2 * k - 1; }
  /// m <= 2k-3 regime of the trace formula.
  bool trace_admissible() const { return k > 0 && max_degree() <= 2 * k - 3; }
};

/// Dense-storage matrix with declared bandwidths; entries outside the
/// band are structurally zero.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int lower, int upper);

  int dim() const { return n_; }
  int lower_bandwidth() const { return lower_; }
  int upper_bandwidth() const { return upper_; }

  Complex operator()(int r, int c) const {
    return in_band(r, c) ? data_[static_cast<size_t>(r) * n_ + c] : Complex(0.0);
  }
  void add(int r, int c, Complex v);
  bool in_band(int r, int c) const {
    return r >= 0 && c >= 0 && r < n_ && c < n_ && c - r <= upper_ && r - c <= lower_;
  }

  CoeffVec apply(const CoeffVec& v) const;
  /// Row-major dense copy.
  std::vector<Complex> dense() const { return data_; }

  /// max row sum of absolute values.
  double inf_norm() const;

 private:
  int n_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<Complex> data_;
};

/// Galerkin truncation P_N (S_k + sum terms) P_N; creation rows landing at
/// or above N are dropped.
BandedMatrix build_matrix(const HamiltonianSpec& spec, int n);

/// Matrix-free action of build_matrix(spec, v.size()) on v.
CoeffVec apply_op(const HamiltonianSpec& spec, const CoeffVec& v);

/// sum u_n conj(v_n); linear in u, conjugate-linear in v.
Complex inner(const CoeffVec& u, const CoeffVec& v);

double norm(const CoeffVec& v);

/// JSON document {"k": int, "terms": [{"i","j","re","im"}...]}.
std::string spec_to_json(const HamiltonianSpec& spec);
HamiltonianSpec spec_from_json(const std::string& text);

}  // namespace fock
}  // namespace bargmann
