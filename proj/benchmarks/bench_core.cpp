#include <benchmark/benchmark.h>

#include "bargmann/evolve.hpp"
#include "bargmann/fock.hpp"
#include "bargmann/quadrature.hpp"
#include "bargmann/spectra.hpp"
#include "bargmann/trace.hpp"
#include "bargmann/tridiag.hpp"

using namespace bargmann;

static void bm_build_matrix(benchmark::State& state) {
  const auto spec = spectra::gribov_spec({1.0, 0.2, 0.1, 0.05});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto m = fock::build_matrix(spec, n);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(bm_build_matrix)->Arg(64)->Arg(256)->Arg(1024);

static void bm_gauss_hermite(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rule = xform::gauss_hermite(q);
    benchmark::DoNotOptimize(rule);
  }
}
BENCHMARK(bm_gauss_hermite)->Arg(16)->Arg(64)->Arg(128);

static void bm_eigen_sym_tridiag(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  tridiag::Tridiag t;
  t.diag.assign(n, 0.0);
  t.super.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) t.super[i] = tridiag::jacobi_omega(i + 1);
  t.sub = t.super;
  for (auto _ : state) {
    auto sd = tridiag::eigen_sym_tridiag(t);
    benchmark::DoNotOptimize(sd);
  }
}
BENCHMARK(bm_eigen_sym_tridiag)->Arg(32)->Arg(128);

static void bm_eigen_complex(benchmark::State& state) {
  auto full = spectra::gribov_spec({1.0, 0.2, 0.0, 0.0});
  full.k = 3;
  const auto m = fock::build_matrix(full, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto res = spectra::eigen_complex(m);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(bm_eigen_complex)->Arg(64)->Arg(200)->Arg(400);

static void bm_contour_correction(benchmark::State& state) {
  const auto b = spectra::gribov_spec({1.0, 0.2, 0.0, 0.0});
  const double r = 0.5 * (fock::falling_factorial(10, 3) + fock::falling_factorial(11, 3));
  for (auto _ : state) {
    auto v = trace::contour_correction(3, b, 4, r, 256);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_contour_correction);

static void bm_rk4_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto j = evolve::heun_coefficient_system(n);
  fock::BandedMatrix ij(n, 1, 1);
  for (int r = 0; r < n; ++r)
    for (int c = std::max(0, r - 1); c <= std::min(n - 1, r + 1); ++c)
      if (j(r, c) != Complex(0.0)) ij.add(r, c, Complex(0.0, 1.0) * j(r, c));
  CoeffVec v0(n, 0.0);
  v0[0] = 1.0;
  const double dt = 0.09 / ij.inf_norm();
  for (auto _ : state) {
    auto out = evolve::rk4_evolve(ij, v0, 100 * dt, dt);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_rk4_step)->Arg(32)->Arg(256);

BENCHMARK_MAIN();
