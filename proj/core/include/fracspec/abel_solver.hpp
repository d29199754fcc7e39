#pragma once

#include <vector>

#include "fracspec/frac_ops.hpp"
#include "fracspec/jacobi_basis.hpp"
#include "fracspec/zm_analysis.hpp"

namespace fracspec {

struct SolveOptions {
  int k_max = 8;        // depth of the solvability-norm sequence
  double p = 2.0;       // L_p space for the solvability norms and the report
  double nu = 4.0;      // ZM hypothesis parameter for the attached report
  int quad_order = 0;   // residual/analysis rule order; 0 = automatic
};

struct SolveResult {
  CoefficientVector psi;
  double residual_l2 = 0.0;               // ||I^alpha S_N psi - S f|| in the mu1-weighted 2-norm
  std::vector<double> solvability_norms;  // ||D^alpha S_k f||_p for k = 0..k_max
  bool solvability_bounded = false;
  bool pollard_p_ok = true;               // p inside the configured mean-convergence window
  ZMReport zm;                            // decay fit + regime of psi
  int truncation = 0;                     // N
};

struct SolvabilityResult {
  std::vector<double> norms;
  bool bounded = false;
  bool pollard_p_ok = true;
};

// f_m = sum_n psi_n * entry(m, n) for an integral-kind matrix: the
// coefficient image of psi under the truncated operator.
CoefficientVector forward_image(const OperatorMatrix& matrix,
                                const CoefficientVector& psi);

// Solves the operator equation in coefficient space by inverting the
// truncated Galerkin system entry(m,n) psi_n = f_m (partial-pivot LU; the
// matrix is well conditioned, kappa ~ N^(2*alpha)). The residual is computed
// by applying the pointwise fractional-integral oracle to the reconstructed
// psi and measuring the mu1-weighted 2-norm gap to the reconstruction of f
// (all supplied coefficients of f participate, even beyond N). A decay fit,
// regime classification, and series probe of psi are attached, as are the
// solvability norms of f.
//
// Requires matrix.kind == integral (the coefficient-space series against the
// derivative matrix is available separately as series_solution, with its own
// accuracy characteristics), N <= matrix.size - 1, and matching basis ids.
SolveResult solve(const JacobiBasis& basis, const OperatorMatrix& matrix,
                  const CoefficientVector& f, int N, const SolveOptions& opts = {});

// Literal truncated coefficient-space series psi_m = sum_{n<=N} f_n *
// entry(m,n) against a derivative-kind matrix. Converges slowly in N (the
// discarded tail of each column is only algebraically small), so this is a
// diagnostic companion to solve(), not a replacement; see the characterization
// tests for its measured accuracy.
CoefficientVector series_solution(const OperatorMatrix& derivative_matrix,
                                  const CoefficientVector& f, int N);

// Norm sequence ||D^alpha S_k f||_{L_p(mu1)} for k = 0..k_max, by quadrature
// on the modified weight when the integral converges classically and by a
// plain-rule proxy otherwise (the proxy never samples the endpoint; its trend
// is what the bounded flag reads). Raises DomainError, naming the offending
// k, if some term of D^alpha S_k f is non-integrable against the weight
// (sigma_j + beta_w <= -1). k_max must be <= min(basis.max_degree(),
// monomial cap, f.size()-1). bounded = relative spread of the last quarter
// of the sequence < 10%. p outside the configured Pollard window only clears
// pollard_p_ok (warning semantics, not an error).
SolvabilityResult solvability_check(const JacobiBasis& basis, double alpha,
                                    const CoefficientVector& f, int k_max,
                                    double p);

// Pointwise partial-sum synthesis on an arbitrary grid (all supplied
// coefficients participate). Empty grid yields empty output.
std::vector<double> reconstruct(const JacobiBasis& basis,
                                const CoefficientVector& coeffs,
                                const std::vector<double>& grid);

}  // namespace fracspec
