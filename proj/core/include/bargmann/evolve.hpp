#pragma once

#include <functional>

#include "bargmann/fock.hpp"

namespace bargmann {
namespace evolve {

/// d/dt v = G v with G = sign * (matrix of generator); the generator carries
/// its own sign because the source problems use both conventions.
struct EvolutionProblem {
  fock::HamiltonianSpec generator;
  double sign = 1.0;
  CoeffVec initial;
  double t_final = 0.0;
  double dt = 1e-3;
};

struct EvolveResult {
  CoeffVec state;
  /// false when the relative mass in the top 10% of coefficients exceeded
  /// 1e-8 at any step (truncation reflection).
  bool truncation_ok = true;
};

using Observer = std::function<void(double t, const CoeffVec&)>;

/// Coefficient form of phi(t, z) = phi0(z e^{-mu t}): a_n(t) = a_n(0) e^{-mu n t}.
CoeffVec dilation_solution(const CoeffVec& initial, double mu, double t);

/// Classical fixed-step RK4 for d/dt v = M v.  Requires ||M||_inf * dt <= 0.1.
EvolveResult rk4_evolve(const fock::BandedMatrix& m, const CoeffVec& initial, double t_final,
                        double dt, const Observer& observer = nullptr);

EvolveResult rk4_evolve(const EvolutionProblem& p, const Observer& observer = nullptr);

/// Jacobi matrix J of the substituted coefficient system d/dt a~ = i J a~:
/// N x N real symmetric tridiagonal with off-diagonals omega_n = (n+1) sqrt(n),
/// acting on (a~_1 .. a~_N).
fock::BandedMatrix heun_coefficient_system(int n);

/// Relative l2 mass sitting in the top 10% of coefficient slots.
double tail_mass_fraction(const CoeffVec& v);

}  // namespace evolve
}  // namespace bargmann
