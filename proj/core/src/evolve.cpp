#include "bargmann/evolve.hpp"

#include <cmath>

#include "bargmann/tridiag.hpp"

namespace bargmann {
namespace evolve {

using fock::BandedMatrix;

CoeffVec dilation_solution(const CoeffVec& initial, double mu, double t) {
  CoeffVec out(initial.size());
  for (size_t n = 0; n < initial.size(); ++n)
    out[n] = initial[n] * std::exp(-mu * static_cast<double>(n) * t);
  return out;
}

double tail_mass_fraction(const CoeffVec& v) {
  const int n = static_cast<int>(v.size());
  const int tail = std::max(1, n / 10);
  double total = 0.0, top = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = std::norm(v[i]);
    total += m;
    if (i >= n - tail) top += m;
  }
  return total == 0.0 ? 0.0 : top / total;
}

EvolveResult rk4_evolve(const BandedMatrix& m, const CoeffVec& initial, double t_final,
                        double dt, const Observer& observer) {
  if (dt <= 0.0) throw std::invalid_argument("rk4_evolve: dt must be positive");
  if (t_final < 0.0) throw std::invalid_argument("rk4_evolve: t_final must be >= 0");
  if (static_cast<int>(initial.size()) != m.dim())
    throw std::invalid_argument("rk4_evolve: dimension mismatch");
  if (m.inf_norm() * dt > 0.1)
    throw std::invalid_argument("rk4_evolve: stability guard ||G|| * dt <= 0.1 violated");

  EvolveResult res;
  res.state = initial;
  res.truncation_ok = tail_mass_fraction(res.state) < 1e-8;
  if (observer) observer(0.0, res.state);

  const long steps = static_cast<long>(std::ceil(t_final / dt - 1e-12));
  double t = 0.0;
  const int n = m.dim();
  CoeffVec k1, k2, k3, k4, tmp(n);
  for (long s = 0; s < steps; ++s) {
    const double h = std::min(dt, t_final - t);
    k1 = m.apply(res.state);
    for (int i = 0; i < n; ++i) tmp[i] = res.state[i] + 0.5 * h * k1[i];
    k2 = m.apply(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = res.state[i] + 0.5 * h * k2[i];
    k3 = m.apply(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = res.state[i] + h * k3[i];
    k4 = m.apply(tmp);
    for (int i = 0; i < n; ++i)
      res.state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
    if (tail_mass_fraction(res.state) >= 1e-8) res.truncation_ok = false;
    if (observer) observer(t, res.state);
  }
  return res;
}

EvolveResult rk4_evolve(const EvolutionProblem& p, const Observer& observer) {
  const int n = static_cast<int>(p.initial.size());
  if (n < 1) throw std::invalid_argument("rk4_evolve: empty initial vector");
  BandedMatrix m = fock::build_matrix(p.generator, n);
  if (p.sign != 1.0) {
    BandedMatrix scaled(n, m.lower_bandwidth(), m.upper_bandwidth());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (m(r, c) != Complex(0.0)) scaled.add(r, c, p.sign * m(r, c));
    m = scaled;
  }
  return rk4_evolve(m, p.initial, p.t_final, p.dt, observer);
}

BandedMatrix heun_coefficient_system(int n) {
  if (n < 3) throw std::invalid_argument("heun_coefficient_system: need n >= 3");
  BandedMatrix j(n, 1, 1);
  // slot q holds a~_{q+1}; off-diagonal between q and q+1 is omega_{q+1}
  for (int q = 0; q + 1 < n; ++q) {
    const double w = tridiag::jacobi_omega(q + 1);
    j.add(q, q + 1, w);
    j.add(q + 1, q, w);
  }
  return j;
}

}  // namespace evolve
}  // namespace bargmann
