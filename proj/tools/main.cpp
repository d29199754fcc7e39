// fracspec: batch front-end for the spectral fractional-calculus library.
//
// Subcommands
//   matrix       build a Galerkin operator matrix and write it as JSON
//   apply        apply an operator matrix to a coefficient file
//   solve        solve the Abel equation I^alpha psi = f from sampled data
//   analyze      decay fit + integrability-regime report for a coefficient file
//   basis-norms  L^nu norm sequence of the basis and its growth fit
//
// All numeric file output is decimal text (17 significant digits in CSV,
// round-trippable doubles in JSON). Every failure path exits nonzero with a
// single-line "error: ..." diagnostic on stderr: exit 2 for input/validation
// problems, exit 3 for mathematical domain/capability errors.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracspec/abel_solver.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/frac_ops.hpp"
#include "fracspec/jacobi_basis.hpp"
#include "fracspec/special_functions.hpp"
#include "fracspec/zm_analysis.hpp"

using nlohmann::json;
using namespace fracspec;

namespace {

constexpr int kMaxTruncation = 2000;

struct Config {
  double a = 0.0;
  double b = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double alpha = 0.5;
  double nu = 4.0;
  double p = 2.0;
  double growth_beta = 0.0;
  int n = 32;
  int quad_order = 0;
  int k_max = 8;
  std::string kind = "integral";
  std::string convention = "galerkin";
  std::string out;
  std::string samples;
  std::string coeffs;
};

// ---------------------------------------------------------------------------
// formatting / JSON helpers

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no literals for non-finite values; they are emitted as strings so
// the report stays parseable ("q_sup": "inf" in the HIGH regime).
json jnum(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json jarr(const std::vector<double>& vs) {
  json a = json::array();
  for (double v : vs) a.push_back(jnum(v));
  return a;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open output file: " + path);
  os << text;
  if (!os) throw ValidationError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// CSV I/O

std::string trim(const std::string& s) {
  std::size_t lo = s.find_first_not_of(" \t\r\n");
  if (lo == std::string::npos) return "";
  std::size_t hi = s.find_last_not_of(" \t\r\n");
  return s.substr(lo, hi - lo + 1);
}

double parse_number(const std::string& tok, const std::string& where) {
  const std::string t = trim(tok);
  if (t.empty()) throw ValidationError("empty numeric field in " + where);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw ValidationError("malformed number '" + t + "' in " + where);
  }
  return v;
}

void read_two_column_csv(const std::string& path, const std::string& header,
                         std::vector<double>& col1, std::vector<double>& col2) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open input file: " + path);
  std::string line;
  if (!std::getline(is, line) || trim(line) != header) {
    throw ValidationError(path + ": expected header '" + header + "'");
  }
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t comma = t.find(',');
    if (comma == std::string::npos) {
      throw ValidationError(path + " row " + std::to_string(row) + ": expected two comma-separated fields");
    }
    const std::string where = path + " row " + std::to_string(row);
    col1.push_back(parse_number(t.substr(0, comma), where));
    col2.push_back(parse_number(t.substr(comma + 1), where));
  }
}

std::vector<double> read_coeff_csv(const std::string& path) {
  std::vector<double> idx, val;
  read_two_column_csv(path, "index,value", idx, val);
  if (val.empty()) throw ValidationError(path + ": no coefficient rows");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] != double(i)) {
      throw ValidationError(path + ": indices must run 0,1,2,... without gaps");
    }
    if (!std::isfinite(val[i])) {
      throw ValidationError(path + ": non-finite coefficient at index " + std::to_string(i));
    }
  }
  return val;
}

std::string coeff_csv(const std::vector<double>& values) {
  std::string s = "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    s += std::to_string(i) + "," + fmt(values[i]) + "\n";
  }
  return s;
}

std::string sample_csv(const std::vector<double>& xs, const std::vector<double>& fs) {
  std::string s = "x,fx\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s += fmt(xs[i]) + "," + fmt(fs[i]) + "\n";
  }
  return s;
}

// Sorted, strictly increasing, all-finite sample grid.
void read_samples(const std::string& path, std::vector<double>& xs,
                  std::vector<double>& fs) {
  read_two_column_csv(path, "x,fx", xs, fs);
  if (xs.empty()) throw ValidationError(path + ": no sample rows");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(fs[i])) {
      throw ValidationError(path + ": non-finite sample value");
    }
  }
  std::vector<std::size_t> perm(xs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> sx(xs.size()), sf(xs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    sx[i] = xs[perm[i]];
    sf[i] = fs[perm[i]];
  }
  for (std::size_t i = 1; i < sx.size(); ++i) {
    if (sx[i] == sx[i - 1]) {
      throw ValidationError(path + ": duplicate abscissa x = " + fmt(sx[i]));
    }
  }
  xs = std::move(sx);
  fs = std::move(sf);
}

// ---------------------------------------------------------------------------
// resampling: windowed barycentric Lagrange interpolation on the user grid.
// Twelve nearest samples form the stencil; the full-grid product would
// overflow and needlessly couple distant samples.

double resample_at(const std::vector<double>& xs, const std::vector<double>& fs,
                   double x) {
  const int n = int(xs.size());
  const int idx = int(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  if (idx < n && xs[idx] == x) return fs[idx];
  const int w = std::min(12, n);
  const int lo = std::clamp(idx - w / 2, 0, n - w);
  const double scale = 4.0 / (xs[lo + w - 1] - xs[lo]);
  double num = 0.0, den = 0.0;
  for (int j = lo; j < lo + w; ++j) {
    double wj = 1.0;
    for (int k = lo; k < lo + w; ++k) {
      if (k != j) wj /= scale * (xs[j] - xs[k]);
    }
    const double t = wj / (x - xs[j]);
    num += t * fs[j];
    den += t;
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// shared validation (module preconditions re-checked up front so bad inputs
// fail as parse-time errors with readable messages)

void validate_interval_weight(const Config& c) {
  if (!std::isfinite(c.a) || !std::isfinite(c.b) || !(c.a < c.b)) {
    throw ValidationError("interval bounds must be finite with --a < --b; got [" +
                          fmt(c.a) + ", " + fmt(c.b) + "]");
  }
  if (!(c.beta >= -0.5 && c.beta <= 0.5) || !(c.gamma >= -0.5 && c.gamma <= 0.5)) {
    throw ValidationError("weight exponents --beta and --gamma must lie in [-1/2, 1/2]");
  }
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw ValidationError("alpha must lie in the open interval (0,1); got " + fmt(alpha));
  }
}

void validate_truncation(int n) {
  if (n < 0 || n > kMaxTruncation) {
    throw ValidationError("truncation --n must lie in [0, " +
                          std::to_string(kMaxTruncation) + "]");
  }
}

void validate_nu(double nu) {
  if (!(nu > 2.0) || !std::isfinite(nu)) {
    throw ValidationError("--nu must be finite and > 2; got " + fmt(nu));
  }
}

OperatorKind parse_kind(const std::string& kind) {
  return kind == "derivative" ? OperatorKind::derivative : OperatorKind::integral;
}

json zm_json(const ZMReport& zm) {
  return json{{"regime", regime_name(zm.regime)},
              {"p", jnum(zm.p)},
              {"nu", jnum(zm.nu)},
              {"lambda", jnum(zm.lambda)},
              {"growth_beta", jnum(zm.growth_beta)},
              {"q_sup", jnum(zm.q_sup)},
              {"probe_q", jnum(zm.probe_q)},
              {"series_value", jnum(zm.series_value)},
              {"series_converged", zm.series_converged},
              {"series_evaluated", zm.series_evaluated},
              {"constant_factor", jnum(zm.constant_factor)}};
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_matrix(const Config& cfg) {
  validate_interval_weight(cfg);
  validate_alpha(cfg.alpha);
  validate_truncation(cfg.n);
  JacobiBasis basis({cfg.a, cfg.b}, {cfg.beta, cfg.gamma}, std::max(cfg.n, 1));
  OperatorMatrix G = operator_matrix(basis, cfg.alpha, parse_kind(cfg.kind), cfg.n);
  if (cfg.convention == "paper") {
    for (int m = 0; m < G.size; ++m) {
      for (int n = 1; n < G.size; n += 2) G.at(m, n) = -G.at(m, n);
    }
  }
  json j{{"alpha", jnum(cfg.alpha)}, {"beta", jnum(cfg.beta)},
         {"gamma", jnum(cfg.gamma)}, {"a", jnum(cfg.a)},
         {"b", jnum(cfg.b)},         {"kind", cfg.kind},
         {"n", cfg.n},               {"convention", cfg.convention},
         {"entries", jarr(G.entries)}};
  emit(cfg.out, j.dump(2) + "\n");
  return 0;
}

int cmd_apply(const Config& cfg) {
  validate_interval_weight(cfg);
  validate_alpha(cfg.alpha);
  const std::vector<double> c = read_coeff_csv(cfg.coeffs);
  const int n = (cfg.n < 0) ? int(c.size()) - 1 : cfg.n;
  validate_truncation(n);
  if (n + 1 < int(c.size())) {
    throw ValidationError("matrix truncation --n must be at least the coefficient count minus one");
  }
  JacobiBasis basis({cfg.a, cfg.b}, {cfg.beta, cfg.gamma}, std::max(n, 1));
  const OperatorMatrix G = operator_matrix(basis, cfg.alpha, parse_kind(cfg.kind), n);
  std::vector<double> out(std::size_t(n) + 1, 0.0);
  for (int m = 0; m <= n; ++m) {
    double acc = 0.0;
    for (int k = 0; k < int(c.size()); ++k) acc += G(m, k) * c[std::size_t(k)];
    out[std::size_t(m)] = acc;
  }
  emit(cfg.out, coeff_csv(out));
  return 0;
}

int cmd_solve(const Config& cfg) {
  validate_interval_weight(cfg);
  validate_alpha(cfg.alpha);
  validate_truncation(cfg.n);
  validate_nu(cfg.nu);
  if (!(cfg.p >= 1.0)) throw ValidationError("--p must be >= 1; got " + fmt(cfg.p));
  if (cfg.quad_order < 0 || cfg.quad_order > JacobiBasis::kMaxQuadratureOrder) {
    throw ValidationError("--quad-order must lie in [0, " +
                          std::to_string(JacobiBasis::kMaxQuadratureOrder) + "]");
  }
  if (cfg.k_max < 0) throw ValidationError("--k-max must be >= 0");
  if (cfg.out.empty()) {
    throw ValidationError("solve writes three files; --out PREFIX is required");
  }

  std::vector<double> xs, fs;
  read_samples(cfg.samples, xs, fs);

  const int order = cfg.quad_order > 0
                        ? cfg.quad_order
                        : std::min(JacobiBasis::kMaxQuadratureOrder,
                                   std::max(2 * (cfg.n + 1), 64));
  if (int(xs.size()) < 2 * (cfg.n + 1)) {
    throw ValidationError("sample grid must contain at least 2*(n+1) = " +
                          std::to_string(2 * (cfg.n + 1)) + " points; got " +
                          std::to_string(xs.size()));
  }
  if (int(xs.size()) < order) {
    throw ValidationError("sample grid must contain at least quad-order = " +
                          std::to_string(order) + " points; got " +
                          std::to_string(xs.size()));
  }

  JacobiBasis basis({cfg.a, cfg.b}, {cfg.beta, cfg.gamma}, std::max(cfg.n, 1));
  const QuadratureRule rule = basis.quadrature_rule(order);
  if (rule.nodes.front() < xs.front() || rule.nodes.back() > xs.back()) {
    throw ValidationError(
        "sample grid does not cover the quadrature nodes; extend the sampling "
        "toward the interval endpoints");
  }
  std::vector<double> ftilde(rule.nodes.size());
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    ftilde[j] = resample_at(xs, fs, rule.nodes[j]);
  }

  CoefficientVector f = basis.project(ftilde, rule);
  f.values.resize(std::size_t(cfg.n) + 1);

  const OperatorMatrix G = operator_matrix(basis, cfg.alpha, OperatorKind::integral, cfg.n);
  SolveOptions opts;
  opts.k_max = cfg.k_max;
  opts.p = cfg.p;
  opts.nu = cfg.nu;
  opts.quad_order = order;
  SolveResult res = solve(basis, G, f, cfg.n, opts);

  // Residual against the data rather than against the projected coefficients:
  // apply the pointwise fractional-integral oracle to the recovered partial
  // sum and measure the weighted 2-norm gap to the resampled f itself, so the
  // figure the user sees is not floored by the projection tail of f.
  auto psi_fn = [&](double t) { return basis.partial_sum(res.psi, cfg.n, t); };
  double r2 = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double d = frac_integral_pointwise(psi_fn, cfg.alpha, cfg.a, rule.nodes[j]) - ftilde[j];
    r2 += rule.weights[j] * d * d;
  }
  res.residual_l2 = std::sqrt(r2);

  emit(cfg.out + ".psi.csv", coeff_csv(res.psi.values));

  std::vector<double> grid(256);
  for (int i = 0; i < 256; ++i) grid[i] = cfg.a + (cfg.b - cfg.a) * i / 255.0;
  emit(cfg.out + ".recon.csv", sample_csv(grid, reconstruct(basis, res.psi, grid)));

  json rep{{"residual_l2", jnum(res.residual_l2)},
           {"solvability_norms", jarr(res.solvability_norms)},
           {"solvability_bounded", res.solvability_bounded},
           {"pollard_p_ok", res.pollard_p_ok},
           {"zm", zm_json(res.zm)},
           {"truncation", res.truncation},
           {"alpha", jnum(cfg.alpha)},
           {"a", jnum(cfg.a)},
           {"b", jnum(cfg.b)},
           {"beta", jnum(cfg.beta)},
           {"gamma", jnum(cfg.gamma)},
           {"quad_order", order}};
  emit(cfg.out + ".report.json", rep.dump(2) + "\n");
  return 0;
}

int cmd_analyze(const Config& cfg) {
  validate_nu(cfg.nu);
  if (!(cfg.p >= 2.0)) throw ValidationError("--p must be >= 2; got " + fmt(cfg.p));
  if (!(cfg.growth_beta >= 0.0) || !std::isfinite(cfg.growth_beta)) {
    throw ValidationError("--growth-beta must be finite and >= 0");
  }
  const std::vector<double> c = read_coeff_csv(cfg.coeffs);
  if (c.size() < 8) {
    throw ValidationError("analyze needs at least 8 coefficients; got " +
                          std::to_string(c.size()));
  }

  CoefficientVector cv;
  cv.values = c;
  const int hi = int(c.size()) - 1;
  const int lo = std::max(1, hi / 2);
  const DecayFit fit = fit_decay(cv, lo, hi);
  const double lambda = std::max(0.0, fit.lambda_hat);

  ZMReport zm = classify_regime(lambda, cfg.growth_beta, cfg.nu, cfg.p);
  std::vector<double> M(c.size(), 1.0);
  for (std::size_t n = 1; n < M.size(); ++n) M[n] = std::pow(double(n), cfg.growth_beta);
  const ZMSeriesResult series = zm_series(c, M, cfg.nu, zm.probe_q, int(c.size()));
  zm.series_value = series.partial_sum;
  zm.series_converged = series.converged;
  zm.series_evaluated = true;

  json table = json::array();
  for (int i = 0; i <= 8; ++i) {
    const double q = 2.0 + (cfg.nu - 2.0) * i / 9.0;
    table.push_back(json{{"q", jnum(q)},
                         {"predicted_convergent",
                          check_convergence_inequality(lambda, cfg.growth_beta, cfg.nu, q)}});
  }
  if (std::isfinite(zm.q_sup)) {
    table.push_back(json{{"q", jnum(zm.q_sup)},
                         {"predicted_convergent",
                          check_convergence_inequality(lambda, cfg.growth_beta, cfg.nu, zm.q_sup)}});
  }

  json rep{{"count", c.size()},
           {"decay_fit", json{{"lambda_hat", jnum(fit.lambda_hat)},
                              {"amplitude", jnum(fit.amplitude)},
                              {"r_squared", jnum(fit.r_squared)},
                              {"window", json::array({fit.window.first, fit.window.second})}}},
           {"zm", zm_json(zm)},
           {"convergence_table", table}};
  emit(cfg.out, rep.dump(2) + "\n");
  return 0;
}

int cmd_basis_norms(const Config& cfg) {
  validate_interval_weight(cfg);
  validate_nu(cfg.nu);
  if (cfg.n < 8 || cfg.n > kMaxTruncation) {
    throw ValidationError("basis-norms needs --n in [8, " +
                          std::to_string(kMaxTruncation) + "]");
  }
  JacobiBasis basis({cfg.a, cfg.b}, {cfg.beta, cfg.gamma}, cfg.n);
  const auto [norms, fit] = basis.basis_norm_growth(cfg.nu, cfg.n);
  json fj{{"growth", jnum(-fit.lambda_hat)},
          {"amplitude", jnum(fit.amplitude)},
          {"r_squared", jnum(fit.r_squared)},
          {"window", json::array({fit.window.first, fit.window.second})},
          {"nu", jnum(cfg.nu)}};
  emit(cfg.out, coeff_csv(norms));
  if (!cfg.out.empty()) std::fputs((fj.dump() + "\n").c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral fractional calculus: operator matrices, Abel solving, regime analysis"};
  app.require_subcommand(1);
  Config cfg;

  auto add_interval = [&](CLI::App* s) {
    s->add_option("--a", cfg.a, "left endpoint (default 0)");
    s->add_option("--b", cfg.b, "right endpoint (default 1)");
    s->add_option("--beta", cfg.beta, "weight exponent at the left endpoint, in [-1/2,1/2]");
    s->add_option("--gamma", cfg.gamma, "weight exponent at the right endpoint, in [-1/2,1/2]");
  };

  CLI::App* m = app.add_subcommand("matrix", "build a Galerkin operator matrix (JSON)");
  add_interval(m);
  m->add_option("--alpha", cfg.alpha, "fractional order in (0,1)");
  m->add_option("--n", cfg.n, "truncation degree N; matrix is (N+1)x(N+1)");
  m->add_option("--kind", cfg.kind, "integral | derivative")
      ->check(CLI::IsMember({"integral", "derivative"}));
  m->add_option("--convention", cfg.convention,
                "galerkin (as computed) | paper (alternating column signs)")
      ->check(CLI::IsMember({"galerkin", "paper"}));
  m->add_option("--out", cfg.out, "output path (stdout if omitted)");

  CLI::App* ap = app.add_subcommand("apply", "multiply a coefficient file by an operator matrix");
  add_interval(ap);
  ap->add_option("--alpha", cfg.alpha, "fractional order in (0,1)");
  ap->add_option("--coeffs", cfg.coeffs, "input coefficient CSV (index,value)")->required();
  cfg.n = -1;  // apply: default truncation = coefficient count - 1
  ap->add_option("--n", cfg.n, "matrix truncation (default: coefficient count - 1)");
  ap->add_option("--kind", cfg.kind, "integral | derivative")
      ->check(CLI::IsMember({"integral", "derivative"}));
  ap->add_option("--out", cfg.out, "output path (stdout if omitted)");

  CLI::App* s = app.add_subcommand("solve", "solve I^alpha psi = f from samples of f");
  add_interval(s);
  s->add_option("--alpha", cfg.alpha, "fractional order in (0,1)");
  s->add_option("--n", cfg.n, "truncation degree N of the solution");
  s->add_option("--samples", cfg.samples, "input sample CSV (x,fx)")->required();
  s->add_option("--nu", cfg.nu, "regime-report norm index (> 2)");
  s->add_option("--p", cfg.p, "solvability-norm exponent (>= 1)");
  s->add_option("--k-max", cfg.k_max, "depth of the solvability norm sequence");
  s->add_option("--quad-order", cfg.quad_order, "Gauss rule order (0 = automatic)");
  s->add_option("--out", cfg.out,
                "output prefix: writes PREFIX.psi.csv, PREFIX.recon.csv, PREFIX.report.json")
      ->required();

  CLI::App* an = app.add_subcommand("analyze", "decay fit and regime report for a coefficient file");
  an->add_option("--coeffs", cfg.coeffs, "input coefficient CSV (index,value)")->required();
  an->add_option("--nu", cfg.nu, "norm index of the regime hypothesis (> 2)");
  an->add_option("--p", cfg.p, "input-space exponent (>= 2)");
  an->add_option("--growth-beta", cfg.growth_beta, "basis norm growth exponent (>= 0)");
  an->add_option("--out", cfg.out, "output path (stdout if omitted)");

  CLI::App* bn = app.add_subcommand("basis-norms", "L^nu norms of the basis and their growth fit");
  add_interval(bn);
  bn->add_option("--nu", cfg.nu, "norm index (> 2)");
  bn->add_option("--n", cfg.n, "highest degree (>= 8)");
  bn->add_option("--out", cfg.out,
                 "CSV output path; the growth fit JSON goes to stdout (CSV to stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (m->parsed()) return cmd_matrix(cfg);
    if (ap->parsed()) return cmd_apply(cfg);
    if (s->parsed()) return cmd_solve(cfg);
    if (an->parsed()) return cmd_analyze(cfg);
    if (bn->parsed()) return cmd_basis_norms(cfg);
    std::fprintf(stderr, "error: no subcommand\n");
    return 2;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const CapabilityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const InsufficientDataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {  // includes ValidationError
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
