// End-to-end acceptance gate. Each numbered check exercises one externally
// visible guarantee of the library, prints a single [PASS]/[FAIL] line with
// the measured figure against its pinned tolerance, and the binary exits
// nonzero if any check fails. Tolerances here are contractual: loosening one
// to make a failing build pass defeats the point of the gate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fracspec/abel_solver.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/frac_ops.hpp"
#include "fracspec/jacobi_basis.hpp"
#include "fracspec/special_functions.hpp"
#include "fracspec/zm_analysis.hpp"

using namespace fracspec;

namespace {

int g_failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MonomialPoly make_poly(const std::vector<double>& coeffs) {
  MonomialPoly p;
  p.origin = MonomialPoly::Origin::left;
  p.a = 0.0;
  p.b = 1.0;
  p.coeffs.assign(coeffs.begin(), coeffs.end());
  return p;
}

CoefficientVector sqrt_coeffs(const JacobiBasis& basis, int count) {
  CoefficientVector f;
  f.basis_id = basis.id();
  f.values.resize(std::size_t(count));
  for (int n = 0; n < count; ++n) {
    const double scale = std::exp(2.0 * sf::log_gamma(1.5) - sf::log_gamma(2.5 + n));
    f.values[std::size_t(n)] =
        std::sqrt(2.0 * n + 1.0) * scale * sf::reciprocal_gamma(1.5 - n);
  }
  return f;
}

CoefficientVector coeffs_of_x(const JacobiBasis& basis, int count) {
  CoefficientVector c;
  c.basis_id = basis.id();
  c.values.assign(std::size_t(count), 0.0);
  c.values[0] = 0.5;
  if (count > 1) c.values[1] = std::sqrt(3.0) / 6.0;
  return c;
}

const double kCorners[3] = {-0.5, 0.0, 0.5};

// --- check 1: the generated system is orthonormal under its own measure ----

void check_orthonormality() {
  const auto t0 = std::chrono::steady_clock::now();
  const int deg = 24;
  double dev = 0.0;
  for (double bw : kCorners) {
    for (double gw : kCorners) {
      JacobiBasis basis({0.0, 1.0}, {bw, gw}, deg);
      const QuadratureRule rule = basis.quadrature_rule(64);
      std::vector<double> gram((deg + 1) * (deg + 1), 0.0);
      std::vector<double> vals(deg + 1);
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        basis.evaluate_all(deg, rule.nodes[j], vals.data());
        for (int m = 0; m <= deg; ++m) {
          for (int n = m; n <= deg; ++n) {
            gram[std::size_t(m * (deg + 1) + n)] += rule.weights[j] * vals[m] * vals[n];
          }
        }
      }
      for (int m = 0; m <= deg; ++m) {
        for (int n = m; n <= deg; ++n) {
          const double want = (m == n) ? 1.0 : 0.0;
          dev = std::max(dev, std::abs(gram[std::size_t(m * (deg + 1) + n)] - want));
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  report(dev < 1e-9 && dt < 5.0, "1 basis orthonormality",
         "max |Gram - I| = " + num(dev) +
             " (tol 1e-9) over nine weight corners, degrees <= 24, " + num(dt) +
             " s (budget 5 s)");
}

// --- check 2: pointwise operator values, semigroup, and inversion ----------

void check_operator_identities() {
  auto one = [](double) { return 1.0; };
  const double value_err =
      std::abs(frac_integral_pointwise(one, 0.5, 0.0, 1.0) - 2.0 / std::sqrt(M_PI));

  std::vector<double> coeffs(21);
  for (int k = 0; k <= 20; ++k) coeffs[std::size_t(k)] = (k % 2 ? -1.0 : 1.0) / (k + 1.0);
  const MonomialPoly p = make_poly(coeffs);

  double semi_dev = 0.0;
  for (double alpha : {0.2, 0.3, 0.5}) {
    for (double delta : {0.2, 0.3, 0.5}) {
      if (alpha + delta >= 1.0) continue;
      FracPoly one_step = frac_integral_poly(p, alpha + delta, Side::left);
      FracPoly two_step = frac_apply_fracpoly(frac_integral_poly(p, alpha, Side::left),
                                              delta, OperatorKind::integral);
      for (std::size_t j = 0; j < one_step.terms(); ++j) {
        semi_dev = std::max(semi_dev, std::abs(one_step.coeffs[j] - two_step.coeffs[j]));
      }
    }
  }

  double inv_dev = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    FracPoly back = frac_apply_fracpoly(frac_integral_poly(p, alpha, Side::left), alpha,
                                        OperatorKind::derivative);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      inv_dev = std::max(inv_dev, std::abs(back.coeffs[k] - coeffs[k]));
    }
  }

  report(value_err < 1e-9 && semi_dev < 1e-10 && inv_dev < 1e-10,
         "2 fractional-operator identities",
         "half-integral value error " + num(value_err) +
             " (tol 1e-9); semigroup dev " + num(semi_dev) +
             ", derivative-inverts-integral dev " + num(inv_dev) +
             " (tol 1e-10, polynomials to degree 20)");
}

// --- check 3: the two matrix assembly routes agree ---------------------------

void check_matrix_routes() {
  double route_dev = 0.0;
  for (double bw : kCorners) {
    for (double gw : kCorners) {
      JacobiBasis basis({0.0, 1.0}, {bw, gw}, 12);
      for (double alpha : {0.25, 0.5, 0.75}) {
        auto Ge = operator_matrix(basis, alpha, OperatorKind::integral, 12);
        auto Gq = operator_matrix_quadrature(basis, alpha, OperatorKind::integral, 12);
        for (int m = 0; m <= 12; ++m) {
          for (int n = 0; n <= 12; ++n) {
            route_dev = std::max(route_dev, std::abs(Ge(m, n) - Gq(m, n)));
          }
        }
      }
    }
  }

  JacobiBasis leg({0.0, 1.0}, {0.0, 0.0}, 4);
  auto G = operator_matrix(leg, 0.5, OperatorKind::integral, 4);
  const double e00 = std::abs(G(0, 0) - 4.0 / (3.0 * std::sqrt(M_PI)));
  const double e01 = std::abs(G(0, 1) + 4.0 * std::sqrt(3.0) / (15.0 * std::sqrt(M_PI)));

  report(route_dev < 1e-7 && e00 < 1e-10 && e01 < 1e-10,
         "3 matrix assembly cross-validation",
         "closed-form vs quadrature max dev " + num(route_dev) +
             " (tol 1e-7, N = 12, three orders, nine corners); reference entries off by " +
             num(std::max(e00, e01)) + " (tol 1e-10)");
}

// --- check 4: round trips recover polynomial solutions; residual decays ----

void check_solver_round_trips() {
  const auto t0 = std::chrono::steady_clock::now();
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 48);
  const QuadratureRule rule = basis.quadrature_rule(96);

  std::vector<CoefficientVector> targets;
  CoefficientVector one;
  one.basis_id = basis.id();
  one.values.assign(33, 0.0);
  one.values[0] = 1.0;
  targets.push_back(one);
  targets.push_back(coeffs_of_x(basis, 33));
  std::vector<double> sq(rule.nodes.size());
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) sq[j] = rule.nodes[j] * rule.nodes[j];
  CoefficientVector sq_c = basis.project(sq, rule);
  sq_c.values.resize(33);
  targets.push_back(sq_c);

  double rel_dev = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    auto G = operator_matrix(basis, alpha, OperatorKind::integral, 32);
    for (const auto& psi_star : targets) {
      auto f = forward_image(G, psi_star);
      auto res = solve(basis, G, f, 32, {});
      double err2 = 0.0, ref2 = 0.0;
      for (int m = 0; m <= 32; ++m) {
        const double d = res.psi.values[std::size_t(m)] - psi_star.values[std::size_t(m)];
        err2 += d * d;
        ref2 += psi_star.values[std::size_t(m)] * psi_star.values[std::size_t(m)];
      }
      rel_dev = std::max(rel_dev, std::sqrt(err2 / ref2));
    }
  }

  // data f(x) = x: the true solution is a multiple of sqrt(x), outside every
  // polynomial space, so enlarging the truncation must shrink the residual
  auto Gd = operator_matrix(basis, 0.5, OperatorKind::integral, 48);
  auto f = coeffs_of_x(basis, 49);
  const double r8 = solve(basis, Gd, f, 8, {}).residual_l2;
  const double r32 = solve(basis, Gd, f, 32, {}).residual_l2;

  const double dt = seconds_since(t0);
  report(rel_dev < 1e-6 && r32 < r8 && r32 < 1e-4 && dt < 30.0,
         "4 Galerkin solve round trips and residual decay",
         "max relative coefficient error " + num(rel_dev) +
             " (tol 1e-6, targets {1, x, x^2}, three orders, N = 32); residual " +
             num(r8) + " (N = 8) -> " + num(r32) +
             " (N = 32, must decrease, tol 1e-4) on singular-solution data; " +
             num(dt) + " s (budget 30 s)");
}

// --- check 5: square-root data reproduces the constant solution -------------

void check_singular_data_instance() {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 32);
  auto G = operator_matrix(basis, 0.5, OperatorKind::integral, 32);
  auto f = sqrt_coeffs(basis, 33);
  auto res = solve(basis, G, f, 32, {});
  const double e0 = std::abs(res.psi.values[0] - std::sqrt(M_PI) / 2.0);
  double tail = 0.0;
  for (std::size_t n = 1; n < res.psi.size(); ++n) {
    tail = std::max(tail, std::abs(res.psi.values[n]));
  }
  report(e0 < 1e-6 && tail < 1e-6, "5 half-integral equation with sqrt data",
         "|psi_0 - sqrt(pi)/2| = " + num(e0) + ", max |psi_n|, n >= 1: " + num(tail) +
             " (tol 1e-6 each, N = 32)");
}

// --- check 6: regime classification and the strict convergence predicate ----

void check_classification() {
  bool ok = true;
  std::string note;

  auto rep = classify_regime(1.0, 0.0, 4.0, 2.0);
  ok = ok && rep.regime == Regime::MID && std::abs(rep.q_sup - 4.0) < 1e-12;
  note += "q_sup(lambda=1, nu=4) = " + num(rep.q_sup) + " (want 4, MID)";

  ok = ok && classify_regime(1.5, 0.0, 4.0, 2.0).regime == Regime::HIGH;
  ok = ok && classify_regime(1.5 - 1e-9, 0.0, 4.0, 2.0).regime == Regime::MID;
  note += "; HIGH boundary at 3/2 is sharp";

  auto low = classify_regime(0.5, 0.0, 4.0, 2.0);
  ok = ok && low.regime == Regime::LOW && low.q_sup == 2.0;
  ok = ok && classify_regime(0.3, 0.0, 4.0, 3.0).q_sup == 3.0;
  note += "; lambda <= 1/2 falls back to q_sup = p";

  const bool below = check_convergence_inequality(1.0, 0.0, 4.0, 4.0 - 1e-6);
  const bool at = check_convergence_inequality(1.0, 0.0, 4.0, 4.0);
  const bool above = check_convergence_inequality(1.0, 0.0, 4.0, 4.0 + 1e-9);
  ok = ok && below && !at && !above;
  note += "; predicate strict at q_sup (true below, false at and above)";

  report(ok, "6 regime classification", note);
}

// --- check 7: the convergence predicate matches the evaluated series --------

void check_predictor_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const int T = 100000;
  int checked = 0, excluded = 0, mismatches = 0;

  for (double lambda : {0.6, 1.0, 1.4}) {
    std::vector<double> c(std::size_t(T), 1.0);
    for (int n = 1; n < T; ++n) c[std::size_t(n)] = std::pow(double(n), -lambda);
    for (double gb : {0.0, 0.5}) {
      std::vector<double> M(std::size_t(T), 1.0);
      for (int n = 1; n < T; ++n) M[std::size_t(n)] = std::pow(double(n), gb);
      for (double nu : {4.0, 6.0}) {
        for (double q : {2.5, 3.0, 3.5}) {
          const double lhs = gb * nu * (q - 2.0) / (nu - 2.0) +
                             (nu - 1.0) * (q - 2.0) / (nu - 2.0) - lambda * q;
          if (std::abs(lhs + 1.0) < 0.05) {
            ++excluded;  // too close to the boundary for a finite partial sum
            continue;
          }
          const bool theory = check_convergence_inequality(lambda, gb, nu, q);
          const bool observed = zm_series(c, M, nu, q, T).converged;
          ++checked;
          if (theory != observed) ++mismatches;
        }
      }
    }
  }

  const double dt = seconds_since(t0);
  report(mismatches == 0 && dt < 60.0, "7 series evaluation matches the predicate",
         std::to_string(checked) + " parameter points agree (" +
             std::to_string(excluded) + " boundary points excluded), " +
             std::to_string(mismatches) + " mismatches, T = 1e5 terms, " + num(dt) +
             " s (budget 60 s)");
}

// --- check 8: integration-by-parts pairing for the weighted adjoint ---------

void check_adjoint_pairing() {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 8);

  // scalar instance: both sides equal 4 / (3 sqrt(pi))
  const double want = 4.0 / (3.0 * std::sqrt(M_PI));
  auto rule_l0 = basis.modified_quadrature_rule(0.5, 0.0, 16);
  FracPoly img0 = frac_integral_poly(make_poly({1.0}), 0.5, Side::left);
  double lhs0 = 0.0;
  for (std::size_t j = 0; j < rule_l0.nodes.size(); ++j) lhs0 += rule_l0.weights[j] * img0.coeffs[0];
  auto rule_r0 = basis.modified_quadrature_rule(0.0, 0.5, 16);
  auto h1 = [](double) { return 1.0; };
  double rhs0 = 0.0;
  for (std::size_t j = 0; j < rule_r0.nodes.size(); ++j) {
    const double x = rule_r0.nodes[j];
    rhs0 += rule_r0.weights[j] * weighted_adjoint_apply(basis, 0.5, h1, x) /
            std::sqrt(1.0 - x);
  }
  const double scalar_err = std::max(std::abs(lhs0 - want), std::abs(rhs0 - want));

  // basis pairs: (I^alpha p_i, p_j) = (p_i, B* p_j) for i, j <= 8
  double pair_dev = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    auto rule_l = basis.modified_quadrature_rule(alpha, 0.0, 16);
    auto rule_r = basis.modified_quadrature_rule(0.0, alpha, 16);
    for (int i = 0; i <= 8; ++i) {
      FracPoly img = frac_integral_poly(
          basis.monomial_expansion(i, MonomialPoly::Origin::left), alpha, Side::left);
      for (int j = 0; j <= 8; ++j) {
        double lhs = 0.0;
        for (std::size_t k = 0; k < rule_l.nodes.size(); ++k) {
          const double x = rule_l.nodes[k];
          lhs += rule_l.weights[k] * (img.evaluate(x) / std::pow(x, alpha)) *
                 basis.evaluate(j, x);
        }
        double rhs = 0.0;
        auto pj = [&](double t) { return basis.evaluate(j, t); };
        for (std::size_t k = 0; k < rule_r.nodes.size(); ++k) {
          const double x = rule_r.nodes[k];
          rhs += rule_r.weights[k] * basis.evaluate(i, x) *
                 (weighted_adjoint_apply(basis, alpha, pj, x) / std::pow(1.0 - x, alpha));
        }
        pair_dev = std::max(pair_dev, std::abs(lhs - rhs));
      }
    }
  }

  report(scalar_err < 1e-9 && pair_dev < 1e-8, "8 adjoint pairing identity",
         "scalar probe error " + num(scalar_err) +
             " (tol 1e-9); max pairing mismatch over basis pairs i, j <= 8 and three orders " +
             num(pair_dev) + " (tol 1e-8)");
}

// --- check 9: decay-exponent recovery on exact power laws --------------------

void check_decay_fit() {
  double worst = 0.0;
  for (double lambda : {0.75, 1.5, 2.25}) {
    CoefficientVector cv;
    cv.values.resize(64);
    cv.values[0] = 2.0;
    for (int n = 1; n < 64; ++n) cv.values[std::size_t(n)] = 2.0 * std::pow(double(n), -lambda);
    const DecayFit fit = fit_decay(cv, 32, 63);
    worst = std::max(worst, std::abs(fit.lambda_hat - lambda) / lambda);
  }
  report(worst < 0.02, "9 decay-exponent recovery",
         "max relative error " + num(worst) +
             " (tol 2%) for exponents {0.75, 1.5, 2.25} over 64-term sequences");
}

}  // namespace

int main() {
  check_orthonormality();
  check_operator_identities();
  check_matrix_routes();
  check_solver_round_trips();
  check_singular_data_instance();
  check_classification();
  check_predictor_equivalence();
  check_adjoint_pairing();
  check_decay_fit();
  if (g_failures == 0) {
    std::printf("all 9 checks passed\n");
    return 0;
  }
  std::printf("%d of 9 checks FAILED\n", g_failures);
  return 1;
}
