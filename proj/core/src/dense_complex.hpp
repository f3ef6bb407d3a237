#pragma once

// Internal dense complex linear algebra: Hessenberg reduction, shifted QR
// eigenvalues, LU solves.  Not installed; oracles in tests are independent.

#include <complex>
#include <vector>

#include "bargmann/fock.hpp"

namespace bargmann {
namespace detail {

class DenseC {
 public:
  DenseC() = default;
  explicit DenseC(int n) : n_(n), a_(static_cast<size_t>(n) * n, Complex(0.0)) {}

  int dim() const { return n_; }
  Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  Complex operator()(int r, int c) const { return a_[static_cast<size_t>(r) * n_ + c]; }

  double frobenius() const;

  std::vector<Complex> apply(const std::vector<Complex>& v) const;
  DenseC adjoint() const;

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

/// In-place reduction to upper Hessenberg form by Householder reflections.
void hessenberg_reduce(DenseC& h);

/// All eigenvalues of an upper Hessenberg matrix via Wilkinson-shifted QR
/// with Givens rotations.  Throws NumericalError after the iteration cap.
std::vector<Complex> hessenberg_eigenvalues(DenseC h, int max_sweeps_per_eig = 60);

/// LU factorization with partial pivoting; solve overwrites rhs.
struct LU {
  explicit LU(DenseC m);
  void solve(std::vector<Complex>& rhs) const;
  void solve_adjoint(std::vector<Complex>& rhs) const;  // solves A^H x = rhs
  bool singular = false;

 private:
  DenseC lu_;
  std::vector<int> piv_;
};

/// Smallest singular value by inverse power iteration on (A^H A).
double smallest_singular_value(const DenseC& a, int iters = 60);

/// Largest singular value (operator 2-norm) by power iteration on (A^H A).
double largest_singular_value(const DenseC& a, int iters = 60);

}  // namespace detail
}  // namespace bargmann
