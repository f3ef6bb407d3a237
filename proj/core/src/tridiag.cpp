#include "bargmann/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bargmann/fock.hpp"
#include "json.hpp"

namespace bargmann {
namespace tridiag {

namespace {

void check_shape(const Tridiag& t, const char* who) {
  const size_t n = t.diag.size();
  if (n == 0) throw std::invalid_argument(std::string(who) + ": empty matrix");
  if (t.super.size() + 1 != n || t.sub.size() + 1 != n)
    throw std::invalid_argument(std::string(who) + ": off-diagonal lengths must be n-1");
}

// Scaled value with a base-2 exponent carried separately, for products and
// determinant recurrences that overflow double.
struct Scaled {
  double v = 1.0;
  long e = 0;

  void normalize() {
    if (v == 0.0) { e = 0; return; }
    while (std::abs(v) > 0x1p+512) { v *= 0x1p-512; e += 512; }
    while (std::abs(v) < 0x1p-512 && v != 0.0) { v *= 0x1p+512; e -= 512; }
  }
  double log_abs() const { return std::log(std::abs(v)) + static_cast<double>(e) * std::log(2.0); }
  int sign() const { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
};

}  // namespace

bool Tridiag::symmetric() const {
  for (size_t i = 0; i < super.size(); ++i)
    if (super[i] != sub[i]) return false;
  return true;
}

bool Tridiag::similarity_symmetrizable() const {
  for (size_t i = 0; i < super.size(); ++i)
    if (super[i] * sub[i] <= 0.0) return false;
  return true;
}

std::vector<double> char_poly_seq(const Tridiag& t, double lambda) {
  check_shape(t, "char_poly_seq");
  const int n = t.size();
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  p[1] = t.diag[0] - lambda;
  for (int i = 2; i <= n; ++i)
    p[i] = (t.diag[i - 1] - lambda) * p[i - 1] - t.super[i - 2] * t.sub[i - 2] * p[i - 2];
  return p;
}

std::vector<std::vector<double>> usmani_inverse(const Tridiag& t) {
  check_shape(t, "usmani_inverse");
  const int n = t.size();

  // combine s1*x + s2*y for scaled x, y at a common (max) exponent
  auto combine = [](double s1, const Scaled& x, double s2, const Scaled& y) {
    Scaled r;
    if (x.v == 0.0 && y.v == 0.0) return r = {0.0, 0}, r;
    const long e = std::max(x.v == 0.0 ? y.e : x.e, y.v == 0.0 ? x.e : y.e);
    const double xv = x.v * std::exp2(static_cast<double>(x.e - e));
    const double yv = y.v * std::exp2(static_cast<double>(y.e - e));
    r.v = s1 * xv + s2 * yv;
    r.e = e;
    r.normalize();
    return r;
  };

  // theta_i = a_i theta_{i-1} - b_{i-1} c_{i-1} theta_{i-2}, theta_0 = 1.
  std::vector<Scaled> theta(n + 1);
  theta[0] = {1.0, 0};
  theta[1] = {t.diag[0], 0};
  theta[1].normalize();
  for (int i = 2; i <= n; ++i)
    theta[i] = combine(t.diag[i - 1], theta[i - 1], -t.super[i - 2] * t.sub[i - 2], theta[i - 2]);

  // phi_i = a_i phi_{i+1} - b_i c_i phi_{i+2}, phi_{n+1} = 1, phi_n = a_n.
  std::vector<Scaled> phi(n + 2);
  phi[n + 1] = {1.0, 0};
  phi[n] = {t.diag[n - 1], 0};
  phi[n].normalize();
  for (int i = n - 1; i >= 1; --i)
    phi[i] = combine(t.diag[i - 1], phi[i + 1], -t.super[i - 1] * t.sub[i - 1], phi[i + 2]);

  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(t.diag[i]));
  for (int i = 0; i + 1 < n; ++i)
    scale = std::max({scale, std::abs(t.super[i]), std::abs(t.sub[i])});
  if (scale == 0.0) scale = 1.0;
  // det T = theta_n; singular within tolerance when a diagonal cofactor
  // theta_{i-1} phi_{i+1} overwhelms it, i.e. |T^{-1}_{ii}| * ||T|| >= 1e12
  if (theta[n].v == 0.0)
    throw NumericalError("usmani_inverse: matrix is singular (theta_n = 0)");
  double log_cof = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= n; ++i)
    if (theta[i - 1].v != 0.0 && phi[i + 1].v != 0.0)
      log_cof = std::max(log_cof, theta[i - 1].log_abs() + phi[i + 1].log_abs());
  if (theta[n].log_abs() < log_cof + std::log(scale) - std::log(1e12))
    throw NumericalError("usmani_inverse: matrix is singular within tolerance");

  // prefix log-sums of |b| and |c| with sign parities and zero counts
  auto prefix = [](const std::vector<double>& x) {
    const int m = static_cast<int>(x.size());
    std::vector<double> lg(m + 1, 0.0);
    std::vector<int> neg(m + 1, 0), zero(m + 1, 0);
    for (int i = 0; i < m; ++i) {
      lg[i + 1] = lg[i] + (x[i] == 0.0 ? 0.0 : std::log(std::abs(x[i])));
      neg[i + 1] = neg[i] + (x[i] < 0.0 ? 1 : 0);
      zero[i + 1] = zero[i] + (x[i] == 0.0 ? 1 : 0);
    }
    return std::tuple<std::vector<double>, std::vector<int>, std::vector<int>>(lg, neg, zero);
  };
  auto [blg, bneg, bzero] = prefix(t.super);
  auto [clg, cneg, czero] = prefix(t.sub);

  const double log_det = theta[n].log_abs();
  const int sgn_det = theta[n].sign();

  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      double logprod;
      int sgn;
      int zeros;
      if (i <= j) {
        logprod = blg[j - 1] - blg[i - 1];
        sgn = ((bneg[j - 1] - bneg[i - 1]) % 2 == 0) ? 1 : -1;
        zeros = bzero[j - 1] - bzero[i - 1];
      } else {
        logprod = clg[i - 1] - clg[j - 1];
        sgn = ((cneg[i - 1] - cneg[j - 1]) % 2 == 0) ? 1 : -1;
        zeros = czero[i - 1] - czero[j - 1];
      }
      if (zeros > 0) continue;
      const Scaled& th = theta[std::min(i, j) - 1];
      const Scaled& ph = phi[std::max(i, j) + 1];
      if (th.v == 0.0 || ph.v == 0.0) continue;
      const double lg = logprod + th.log_abs() + ph.log_abs() - log_det;
      int s = sgn * th.sign() * ph.sign() * sgn_det;
      if (((i + j) % 2) != 0) s = -s;
      inv[i - 1][j - 1] = s * std::exp(lg);
    }
  }
  return inv;
}

SymmetrizeResult symmetrize(const Tridiag& t) {
  check_shape(t, "symmetrize");
  if (!t.similarity_symmetrizable())
    throw std::invalid_argument("symmetrize: requires b_i * c_i > 0 for all i");
  const int n = t.size();
  SymmetrizeResult out;
  out.d.assign(n, 1.0);
  for (int i = 1; i < n; ++i) out.d[i] = out.d[i - 1] * std::sqrt(t.super[i - 1] / t.sub[i - 1]);
  out.s.diag = t.diag;
  out.s.super.resize(n - 1);
  out.s.sub.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const double v = std::sqrt(t.super[i] * t.sub[i]);
    out.s.super[i] = v;
    out.s.sub[i] = v;
  }
  return out;
}

int sturm_count(const Tridiag& s, double x) {
  check_shape(s, "sturm_count");
  if (!s.symmetric()) throw std::invalid_argument("sturm_count: matrix is not symmetric");
  const int n = s.size();
  int count = 0;
  double d = 1.0;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (int i = 0; i < n; ++i) {
    const double off2 = (i == 0) ? 0.0 : s.super[i - 1] * s.super[i - 1];
    d = (s.diag[i] - x) - (i == 0 ? 0.0 : off2 / d);
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

// Eigenvalues of an irreducible symmetric block by index-targeted bisection.
std::vector<double> bisect_block(const Tridiag& s) {
  const int n = s.size();
  double lo = s.diag[0], hi = s.diag[0];
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(s.super[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(s.super[i]) : 0.0);
    lo = std::min(lo, s.diag[i] - r);
    hi = std::max(hi, s.diag[i] + r);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  lo -= 1e-12 * scale;
  hi += 1e-12 * scale;

  std::vector<double> eig(n);
  for (int j = 0; j < n; ++j) {
    double a = lo, b = hi;
    // invariant: count(a) <= j < count(b)
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (sturm_count(s, mid) <= j)
        a = mid;
      else
        b = mid;
    }
    eig[j] = 0.5 * (a + b);
  }
  return eig;
}

// Solve (S - lambda I) x = rhs by tridiagonal LU with partial pivoting.
void shifted_solve(const Tridiag& s, double lambda, std::vector<double>& x) {
  const int n = s.size();
  std::vector<double> d(n), du(std::max(0, n - 1)), du2(std::max(0, n - 2), 0.0),
      dl(std::max(0, n - 1));
  for (int i = 0; i < n; ++i) d[i] = s.diag[i] - lambda;
  for (int i = 0; i + 1 < n; ++i) {
    du[i] = s.super[i];
    dl[i] = s.super[i];
  }
  const double tiny = 1e-300;
  std::vector<int> piv(n, 0);
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < tiny) d[i] = tiny;
      const double m = dl[i] / d[i];
      d[i + 1] -= m * du[i];
      dl[i] = m;  // store multiplier
    } else {
      piv[i] = 1;
      const double m = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - m * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -m * du[i + 1];
      }
      du[i] = tmp;
      dl[i] = m;
    }
  }
  if (std::abs(d[n - 1]) < tiny) d[n - 1] = tiny;
  // forward
  for (int i = 0; i + 1 < n; ++i) {
    if (piv[i] == 0) {
      x[i + 1] -= dl[i] * x[i];
    } else {
      const double tmp = x[i];
      x[i] = x[i + 1];
      x[i + 1] = tmp - dl[i] * x[i];
    }
  }
  // back substitution with rescaling, so tiny pivots amplify the null
  // direction without overflowing
  auto damp = [&x, n](int from) {
    for (int k = from; k < n; ++k) x[k] *= 1e-100;
  };
  x[n - 1] /= d[n - 1];
  if (std::abs(x[n - 1]) > 1e250) damp(n - 1);
  if (n >= 2) {
    x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    if (std::abs(x[n - 2]) > 1e250) damp(n - 2);
  }
  for (int i = n - 3; i >= 0; --i) {
    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    if (std::abs(x[i]) > 1e250) damp(i);
  }
}

// Scale by max-abs first so heavily damped solutions do not underflow.
bool safe_normalize(std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0 || !std::isfinite(m)) return false;
  for (double& v : x) v /= m;
  double nrm = 0.0;
  for (double v : x) nrm += v * v;
  nrm = std::sqrt(nrm);
  for (double& v : x) v /= nrm;
  return true;
}

std::vector<std::vector<double>> invit_block(const Tridiag& s, const std::vector<double>& eig) {
  const int n = s.size();
  double scale = 0.0;
  for (double v : s.diag) scale = std::max(scale, std::abs(v));
  for (double v : s.super) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<double>> vecs(n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> x(n);
    if (n == 1) {
      x[0] = 1.0;
    } else {
      for (double& v : x) v = unif(rng);
      for (int it = 0; it < 4; ++it) {
        // re-orthogonalize inside clusters of nearly equal eigenvalues
        for (int p = j - 1; p >= 0 && std::abs(eig[p] - eig[j]) < 1e-8 * scale; --p) {
          double dot = 0.0;
          for (int q = 0; q < n; ++q) dot += x[q] * vecs[p][q];
          for (int q = 0; q < n; ++q) x[q] -= dot * vecs[p][q];
        }
        if (!safe_normalize(x)) {
          x.assign(n, 0.0);
          x[j % n] = 1.0;
        }
        shifted_solve(s, eig[j], x);
      }
      for (int p = j - 1; p >= 0 && std::abs(eig[p] - eig[j]) < 1e-8 * scale; --p) {
        double dot = 0.0;
        for (int q = 0; q < n; ++q) dot += x[q] * vecs[p][q];
        for (int q = 0; q < n; ++q) x[q] -= dot * vecs[p][q];
      }
      if (!safe_normalize(x))
        throw NumericalError("eigen_sym_tridiag: inverse iteration produced zero vector");
    }
    // first-component sign convention; fall back to the first significant
    // entry when the theoretical u_1 != 0 guarantee is washed out numerically
    int lead = 0;
    while (lead < n - 1 && std::abs(x[lead]) < 1e-300) ++lead;
    if (x[lead] < 0.0)
      for (double& v : x) v = -v;
    vecs[j] = std::move(x);
  }
  return vecs;
}

}  // namespace

SpectralData eigen_sym_tridiag(const Tridiag& s, bool with_vectors) {
  check_shape(s, "eigen_sym_tridiag");
  if (!s.symmetric()) throw std::invalid_argument("eigen_sym_tridiag: matrix is not symmetric");
  const int n = s.size();

  // split into irreducible blocks on exact zeros
  std::vector<int> starts{0};
  for (int i = 0; i + 1 < n; ++i)
    if (s.super[i] == 0.0) starts.push_back(i + 1);
  starts.push_back(n);

  // pre-scale by the max entry so bisection works on O(1) numbers
  double scale = 0.0;
  for (double v : s.diag) scale = std::max(scale, std::abs(v));
  for (double v : s.super) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  struct Pair {
    double lambda;
    std::vector<double> vec;  // full-length
  };
  std::vector<Pair> pairs;
  pairs.reserve(n);

  for (size_t bidx = 0; bidx + 1 < starts.size(); ++bidx) {
    const int b0 = starts[bidx], b1 = starts[bidx + 1];
    const int bn = b1 - b0;
    Tridiag blk;
    blk.diag.assign(s.diag.begin() + b0, s.diag.begin() + b1);
    blk.super.assign(s.super.begin() + b0, s.super.begin() + (b1 - 1));
    blk.sub = blk.super;
    for (double& v : blk.diag) v /= scale;
    for (double& v : blk.super) v /= scale;
    for (double& v : blk.sub) v /= scale;

    std::vector<double> eig = bisect_block(blk);
    std::vector<std::vector<double>> vecs;
    if (with_vectors) vecs = invit_block(blk, eig);
    for (int j = 0; j < bn; ++j) {
      Pair p;
      p.lambda = eig[j] * scale;
      if (with_vectors) {
        p.vec.assign(n, 0.0);
        for (int q = 0; q < bn; ++q) p.vec[b0 + q] = vecs[j][q];
      }
      pairs.push_back(std::move(p));
    }
  }

  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.lambda < y.lambda; });

  SpectralData out;
  out.eigenvalues.reserve(n);
  for (const auto& p : pairs) out.eigenvalues.push_back(p.lambda);
  if (with_vectors) {
    out.norming_constants.reserve(n);
    for (auto& p : pairs) {
      out.norming_constants.push_back(p.vec[0]);
      out.eigenvectors.push_back(std::move(p.vec));
    }
  }
  return out;
}

std::vector<std::pair<double, double>> golub_intervals(const Tridiag& s) {
  check_shape(s, "golub_intervals");
  if (!s.symmetric()) throw std::invalid_argument("golub_intervals: matrix is not symmetric");
  const int n = s.size();
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < n; ++i) {
    const double bprev = (i > 0) ? s.super[i - 1] : 0.0;
    const double bnext = (i + 1 < n) ? s.super[i] : 0.0;
    const double sigma = std::sqrt(bprev * bprev + bnext * bnext);
    out[i] = {s.diag[i] - sigma, s.diag[i] + sigma};
  }
  return out;
}

double jacobi_omega(int n) {
  if (n < 1) throw std::invalid_argument("jacobi_omega: n must be >= 1");
  return (static_cast<double>(n) + 1.0) * std::sqrt(static_cast<double>(n));
}

JacobiKernelSolution kernel_solution(int n) {
  if (n < 1) throw std::invalid_argument("kernel_solution: n must be >= 1");
  JacobiKernelSolution out;
  out.entries.assign(n, 0.0);
  out.entries[0] = 1.0;  // a~_1
  // a~_{m+1} = -(sqrt(m(m-1))/(m+1)) a~_{m-1}; even entries stay exactly 0
  for (int m = 2; m + 1 <= n; m += 2) {
    const double num = std::sqrt(static_cast<double>(m) * (m - 1.0));
    out.entries[m] = -(num / (m + 1.0)) * out.entries[m - 2];
  }
  return out;
}

std::string tridiag_to_json(const Tridiag& t) {
  nlohmann::json j;
  j["a"] = t.diag;
  j["b"] = t.super;
  j["c"] = t.sub;
  return j.dump(2);
}

Tridiag tridiag_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Tridiag t;
  t.diag = j.at("a").get<std::vector<double>>();
  t.super = j.at("b").get<std::vector<double>>();
  t.sub = j.at("c").get<std::vector<double>>();
  check_shape(t, "tridiag_from_json");
  return t;
}

}  // namespace tridiag
}  // namespace bargmann
