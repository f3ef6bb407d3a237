#include "bargmann/fock.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace bargmann {
namespace fock {

Complex basis_eval(int n, Complex z) {
  if (n < 0) throw std::invalid_argument("basis_eval: n must be nonnegative");
  if (n == 0) return 1.0;
  if (z == Complex(0.0)) return 0.0;
  // z^n / sqrt(n!) = exp(n log z - lgamma(n+1)/2); exact for integer powers
  // on any branch of log.
  Complex w = static_cast<double>(n) * std::log(z);
  w -= 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
  return std::exp(w);
}

double falling_factorial(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("falling_factorial: negative argument");
  if (k > n) return 0.0;
  double p = 1.0;
  for (int t = 0; t < k; ++t) p *= static_cast<double>(n - t);
  return p;
}

unsigned __int128 falling_factorial_exact(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("falling_factorial_exact: negative argument");
  if (k > n) return 0;
  unsigned __int128 p = 1;
  for (int t = 0; t < k; ++t) p *= static_cast<unsigned __int128>(n - t);
  return p;
}

double monomial_entry(int n, int i, int j) {
  if (n < 0 || i < 0 || j < 0) throw std::invalid_argument("monomial_entry: negative argument");
  if (j > n) return 0.0;
  return std::sqrt(falling_factorial(n + i - j, i) * falling_factorial(n, j));
}

int HamiltonianSpec::max_degree() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.i + t.j);
  return m;
}

int HamiltonianSpec::max_power() const {
  int m = k;
  for (const auto& t : terms)
    if (t.a != Complex(0.0)) m = std::max({m, t.i, t.j});
  return m;
}

BandedMatrix::BandedMatrix(int n, int lower, int upper)
    : n_(n), lower_(lower), upper_(upper), data_(static_cast<size_t>(n) * n, Complex(0.0)) {
  if (n < 1) throw std::invalid_argument("BandedMatrix: dimension must be >= 1");
}

void BandedMatrix::add(int r, int c, Complex v) {
  if (!in_band(r, c)) throw std::invalid_argument("BandedMatrix::add outside declared band");
  data_[static_cast<size_t>(r) * n_ + c] += v;
}

CoeffVec BandedMatrix::apply(const CoeffVec& v) const {
  if (static_cast<int>(v.size()) != n_)
    throw std::invalid_argument("BandedMatrix::apply: dimension mismatch");
  CoeffVec out(n_, Complex(0.0));
  for (int r = 0; r < n_; ++r) {
    const int c0 = std::max(0, r - lower_);
    const int c1 = std::min(n_ - 1, r + upper_);
    Complex acc = 0.0;
    for (int c = c0; c <= c1; ++c) acc += data_[static_cast<size_t>(r) * n_ + c] * v[c];
    out[r] = acc;
  }
  return out;
}

double BandedMatrix::inf_norm() const {
  double best = 0.0;
  for (int r = 0; r < n_; ++r) {
    double s = 0.0;
    for (int c = 0; c < n_; ++c) s += std::abs(data_[static_cast<size_t>(r) * n_ + c]);
    best = std::max(best, s);
  }
  return best;
}

BandedMatrix build_matrix(const HamiltonianSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("build_matrix: truncation dim must be >= 1");
  int bw = 0;
  for (const auto& t : spec.terms) bw = std::max(bw, std::abs(t.i - t.j));
  BandedMatrix m(n, bw, bw);
  if (spec.k > 0)
    for (int c = 0; c < n; ++c) m.add(c, c, falling_factorial(c, spec.k));
  for (const auto& t : spec.terms) {
    for (int c = 0; c < n; ++c) {
      const int r = c + t.i - t.j;
      if (r < 0 || r >= n) continue;  // truncation drops spilled rows
      const double coeff = monomial_entry(c, t.i, t.j);
      if (coeff != 0.0) m.add(r, c, t.a * coeff);
    }
  }
  return m;
}

CoeffVec apply_op(const HamiltonianSpec& spec, const CoeffVec& v) {
  const int n = static_cast<int>(v.size());
  if (n < 1) throw std::invalid_argument("apply_op: empty vector");
  CoeffVec out(n, Complex(0.0));
  if (spec.k > 0)
    for (int c = 0; c < n; ++c) out[c] += falling_factorial(c, spec.k) * v[c];
  for (const auto& t : spec.terms) {
    for (int c = 0; c < n; ++c) {
      const int r = c + t.i - t.j;
      if (r < 0 || r >= n) continue;
      out[r] += t.a * monomial_entry(c, t.i, t.j) * v[c];
    }
  }
  return out;
}

Complex inner(const CoeffVec& u, const CoeffVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double norm(const CoeffVec& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

std::string spec_to_json(const HamiltonianSpec& spec) {
  nlohmann::json j;
  j["k"] = spec.k;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : spec.terms)
    j["terms"].push_back({{"i", t.i}, {"j", t.j}, {"re", t.a.real()}, {"im", t.a.imag()}});
  return j.dump(2);
}

HamiltonianSpec spec_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  HamiltonianSpec spec;
  spec.k = j.at("k").get<int>();
  if (spec.k < 0) throw std::invalid_argument("spec_from_json: k must be nonnegative");
  for (const auto& t : j.at("terms")) {
    MonomialTerm term;
    term.i = t.at("i").get<int>();
    term.j = t.at("j").get<int>();
    if (term.i < 0 || term.j < 0)
      throw std::invalid_argument("spec_from_json: powers must be nonnegative");
    term.a = Complex(t.at("re").get<double>(), t.at("im").get<double>());
    spec.terms.push_back(term);
  }
  return spec;
}

}  // namespace fock
}  // namespace bargmann
