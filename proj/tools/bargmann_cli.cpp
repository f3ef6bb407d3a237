// Command-line front end: subcommands spectrum / trace / transform / evolve /
// jacobi over the core library.  Exit codes: 0 success, 2 validation error,
// 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bargmann/evolve.hpp"
#include "bargmann/fock.hpp"
#include "bargmann/quadrature.hpp"
#include "bargmann/spectra.hpp"
#include "bargmann/trace.hpp"
#include "bargmann/transform.hpp"
#include "bargmann/tridiag.hpp"
#include "json.hpp"

namespace {

using namespace bargmann;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// fixed 17-significant-digit formatting keeps outputs byte-identical
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Table emitter shared by all subcommands: CSV or a JSON document that embeds
// the resolved Hamiltonian spec (so emitted specs re-parse losslessly).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  const fock::HamiltonianSpec* spec = nullptr;

  std::string render(const std::string& format) const {
    if (format == "csv") {
      std::ostringstream out;
      for (size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
      for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c)
          out << fmt(row[c]) << (c + 1 < row.size() ? "," : "\n");
      return out.str();
    }
    if (format == "json") {
      nlohmann::json j;
      if (spec) j["spec"] = nlohmann::json::parse(fock::spec_to_json(*spec));
      j["columns"] = columns;
      j["rows"] = rows;
      return j.dump(2) + "\n";
    }
    throw std::invalid_argument("unknown output format: " + format);
  }
};

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fock::HamiltonianSpec load_spec(const std::string& arg) {
  if (arg == "number") return {1, {}};
  if (arg == "heun") return spectra::heun_spec(spectra::HeunVariant::cubic);
  if (arg == "heun-diffusion") return spectra::heun_spec(spectra::HeunVariant::diffusion);
  if (arg == "gribov") return spectra::gribov_spec({1.0, 0.2, 0.0, 0.0});
  return fock::spec_from_json(read_file(arg));
}

// CSV rows of (u, re, im) in file order
std::vector<std::pair<double, Complex>> load_samples(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::pair<double, Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("u,", 0) == 0) continue;
    double u = 0, re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &u, &re, &im) != 3)
      throw std::invalid_argument("malformed sample row: " + line);
    rows.emplace_back(u, Complex(re, im));
  }
  if (rows.empty()) throw std::invalid_argument("no samples in " + path);
  return rows;
}

// CSV rows of (n, re, im) into a coefficient vector
CoeffVec load_coeffs(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::pair<int, Complex>> rows;
  std::string line;
  int top = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
    int n = 0;
    double re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &n, &re, &im) != 3 || n < 0)
      throw std::invalid_argument("malformed coefficient row: " + line);
    rows.emplace_back(n, Complex(re, im));
    top = std::max(top, n);
  }
  if (rows.empty()) throw std::invalid_argument("no coefficients in " + path);
  CoeffVec v(top + 1, Complex(0.0));
  for (const auto& [n, a] : rows) v[n] = a;
  return v;
}

int run_spectrum(const std::string& spec_arg, int dim, bool double_check,
                 const std::string& format, const std::string& out_path) {
  const auto spec = load_spec(spec_arg);
  spectra::SpectrumResult res;
  if (double_check)
    res = spectra::eigen_doubled(spec, dim);
  else
    res = spectra::eigen_complex(fock::build_matrix(spec, dim));

  Table table;
  table.spec = &spec;
  table.columns = {"index", "re", "im", "converged"};
  for (size_t j = 0; j < res.eigenvalues.size(); ++j)
    table.rows.push_back(
        {static_cast<double>(j), res.eigenvalues[j].real(), res.eigenvalues[j].imag(),
         double_check ? (static_cast<int>(j) < res.converged_count ? 1.0 : 0.0) : -1.0});
  write_file(out_path, table.render(format));
  return 0;
}

int run_trace(const std::string& spec_arg, int k, int l, int contours, int s_begin,
              int samples, int dim, const std::string& format, const std::string& out_path) {
  trace::TraceConfig cfg;
  cfg.k = k;
  cfg.l = l;
  cfg.contour_count = contours;
  cfg.s_begin = s_begin;
  cfg.contour_samples = samples;
  cfg.truncation = dim;
  const auto spec = load_spec(spec_arg);
  const auto series = trace::regularized_trace_check(cfg, spec);

  Table table;
  table.spec = &spec;
  table.columns = {"s", "r", "re_value", "im_value"};
  const int s0 = cfg.s_begin >= 0 ? cfg.s_begin : cfg.k;
  for (size_t i = 0; i < series.values.size(); ++i)
    table.rows.push_back({static_cast<double>(s0 + static_cast<int>(i)), series.radii[i],
                          series.values[i].real(), series.values[i].imag()});
  write_file(out_path, table.render(format));
  return 0;
}

int run_transform(const std::string& input, int order, int dim, double alpha,
                  const std::string& format, const std::string& out_path) {
  const auto rule = xform::gauss_hermite(order);
  const auto samples = load_samples(input);
  if (static_cast<int>(samples.size()) != order)
    throw std::invalid_argument("sample count must equal the quadrature order");
  for (int q = 0; q < order; ++q)
    if (std::abs(samples[q].first - rule.nodes[q]) > 1e-9)
      throw std::invalid_argument(
          "sample abscissae must be the Gauss-Hermite nodes of the given order (row " +
          std::to_string(q) + ")");

  const auto kern =
      alpha > 0.0 ? xform::TransformKernel::zhu(alpha) : xform::TransformKernel::classical();
  std::vector<Complex> values(order);
  for (int q = 0; q < order; ++q) values[q] = samples[q].second;
  const auto f = [&values, &rule](double u) {
    for (size_t q = 0; q < values.size(); ++q)
      if (rule.nodes[q] == u) return values[q];
    return Complex(0.0);
  };
  const auto coeffs = xform::disk_coefficients(
      [&](Complex z) { return xform::transform(kern, f, z, rule); }, dim, 1.0);

  Table table;
  table.columns = {"n", "re", "im"};
  for (size_t n = 0; n < coeffs.size(); ++n)
    table.rows.push_back({static_cast<double>(n), coeffs[n].real(), coeffs[n].imag()});
  write_file(out_path, table.render(format));
  return 0;
}

int run_evolve(const std::string& spec_arg, double sign, const std::string& initial_path,
               double t_final, double dt, int stride, const std::string& format,
               const std::string& out_path) {
  evolve::EvolutionProblem p;
  p.generator = load_spec(spec_arg);
  p.sign = sign;
  p.initial = load_coeffs(initial_path);
  p.t_final = t_final;
  p.dt = dt;

  Table table;
  table.spec = &p.generator;
  table.columns = {"t", "n", "re", "im"};
  long step = 0;
  const auto res = evolve::rk4_evolve(p, [&](double t, const CoeffVec& v) {
    if (step % stride == 0)
      for (size_t n = 0; n < v.size(); ++n)
        table.rows.push_back({t, static_cast<double>(n), v[n].real(), v[n].imag()});
    ++step;
  });
  if (!res.truncation_ok)
    std::cerr << "warning: truncation audit tripped (mass reached the top decile)\n";
  write_file(out_path, table.render(format));
  return 0;
}

int run_jacobi(int kernel_n, const std::string& tridiag_path, const std::string& format,
               const std::string& out_path) {
  Table table;
  if (kernel_n > 0) {
    const auto ks = tridiag::kernel_solution(kernel_n);
    table.columns = {"n", "value"};
    for (size_t i = 0; i < ks.entries.size(); ++i)
      table.rows.push_back({static_cast<double>(i + 1), ks.entries[i]});
  } else {
    const auto t = tridiag::tridiag_from_json(read_file(tridiag_path));
    const auto sd = tridiag::eigen_sym_tridiag(tridiag::symmetrize(t).s);
    table.columns = {"k", "eigenvalue", "gamma"};
    for (size_t i = 0; i < sd.eigenvalues.size(); ++i)
      table.rows.push_back(
          {static_cast<double>(i), sd.eigenvalues[i], sd.norming_constants[i]});
  }
  write_file(out_path, table.render(format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Fock-space spectral toolkit"};
  app.require_subcommand(1);

  std::string spec_arg, out_path, input_path, initial_path, tridiag_path;
  std::string format = "csv";
  int dim = 64, k = 3, l = 4, contours = 10, s_begin = -1, samples = 256;
  int order = 64, stride = 1, kernel_n = 0;
  double alpha = 0.0, t_final = 1.0, dt = 1e-3, sign = 1.0;
  bool double_check = false;

  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output,-o", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sp = app.add_subcommand("spectrum", "eigenvalues of a Hamiltonian spec");
  sp->add_option("--spec", spec_arg, "spec JSON path or preset name")->required();
  sp->add_option("--dim", dim, "truncation dimension")->check(CLI::PositiveNumber);
  sp->add_flag("--double-check", double_check, "rerun at 2N and report convergence");
  add_output(sp);

  auto* tr = app.add_subcommand("trace", "regularized trace check");
  tr->add_option("--spec", spec_arg, "perturbation spec JSON or preset")->required();
  tr->add_option("--k", k, "reference power S_k")->check(CLI::PositiveNumber);
  tr->add_option("--l", l, "Neumann correction terms")->check(CLI::PositiveNumber);
  tr->add_option("--contours", contours, "number of contours")->check(CLI::PositiveNumber);
  tr->add_option("--s-begin", s_begin, "first contour index (default k)");
  tr->add_option("--samples", samples, "trapezoid samples (minimum)")
      ->check(CLI::Range(256, 65536));
  tr->add_option("--dim", dim, "eigensolve truncation")->check(CLI::PositiveNumber);
  add_output(tr);

  auto* tf = app.add_subcommand("transform", "Segal-Bargmann transform of samples");
  tf->add_option("--input", input_path, "CSV of (u,re,im) at the quadrature nodes")->required();
  tf->add_option("--order", order, "Gauss-Hermite order")->check(CLI::PositiveNumber);
  tf->add_option("--dim", dim, "number of output coefficients")->check(CLI::PositiveNumber);
  tf->add_option("--alpha", alpha, "Zhu kernel alpha (0 = classical kernel)");
  add_output(tf);

  auto* ev = app.add_subcommand("evolve", "RK4 evolution of a coefficient vector");
  ev->add_option("--spec", spec_arg, "generator spec JSON or preset")->required();
  ev->add_option("--sign", sign, "generator sign (+1 or -1)");
  ev->add_option("--initial", initial_path, "CSV of (n,re,im) initial coefficients")->required();
  ev->add_option("--t", t_final, "final time")->check(CLI::NonNegativeNumber);
  ev->add_option("--dt", dt, "time step")->check(CLI::PositiveNumber);
  ev->add_option("--stride", stride, "snapshot stride")->check(CLI::PositiveNumber);
  add_output(ev);

  auto* ja = app.add_subcommand("jacobi", "Jacobi spectral data and kernel solution");
  ja->add_option("--kernel-solution", kernel_n, "emit the l2 kernel solution up to N");
  ja->add_option("--spec", tridiag_path, "tridiagonal JSON {\"a\":[..],\"b\":[..],\"c\":[..]}");
  add_output(ja);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) return run_spectrum(spec_arg, dim, double_check, format, out_path);
    if (tr->parsed())
      return run_trace(spec_arg, k, l, contours, s_begin, samples, dim, format, out_path);
    if (tf->parsed()) return run_transform(input_path, order, dim, alpha, format, out_path);
    if (ev->parsed())
      return run_evolve(spec_arg, sign, initial_path, t_final, dt, stride, format, out_path);
    if (ja->parsed()) {
      if (kernel_n <= 0 && tridiag_path.empty())
        throw std::invalid_argument("jacobi: need --kernel-solution N or --spec file");
      return run_jacobi(kernel_n, tridiag_path, format, out_path);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
