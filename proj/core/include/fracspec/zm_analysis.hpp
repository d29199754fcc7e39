#pragma once

#include <vector>

#include "fracspec/jacobi_basis.hpp"

namespace fracspec {

// Integrability regime of a coefficient sequence |c_m| ~ m^(-lambda) against
// a basis whose L_nu norms grow like M_n ~ n^growth_beta:
//   LOW  : 0 <= lambda <= 1/2           -> q_sup = p (no gain over the input space)
//   MID  : 1/2 < lambda < threshold     -> q_sup = nu(2*growth_beta+1) /
//                                          (nu(growth_beta+1-lambda)+2*lambda-1)
//   HIGH : lambda >= threshold          -> q_sup = +infinity
// with threshold = (nu(growth_beta+1)-1)/(nu-2).
enum class Regime { LOW, MID, HIGH };

struct ZMReport {
  Regime regime = Regime::LOW;
  double p = 2.0;
  double nu = 4.0;
  double lambda = 0.0;
  double growth_beta = 0.0;
  double q_sup = 2.0;        // +infinity in the HIGH regime
  double probe_q = 2.0;      // strictly admissible q used for series probes
  double series_value = 0.0; // filled by callers that run zm_series
  bool series_converged = false;
  bool series_evaluated = false;
  double constant_factor = 0.0;  // (nu-2)/(nu-q)*q at probe_q
};

const char* regime_name(Regime r);

// Least-squares fit of log|c_m| vs log m over the inclusive index window
// [lo, hi]; entries with |c_m| < 1e-14 (and the index 0, whose log is
// undefined) are excluded. Throws InsufficientDataError with fewer than 4
// usable points.
DecayFit fit_decay(const CoefficientVector& coeffs, int lo, int hi);

// Regime classification. Preconditions: lambda >= 0, growth_beta >= 0,
// nu > 2, p >= 2 (DomainError otherwise). The boundary lambda = 1/2 belongs
// to LOW. probe_q is min(q_sup - 1e-3, 0.999*q_sup) clamped into
// [2, 0.999*nu]; in the HIGH regime it is 0.999*nu.
ZMReport classify_regime(double lambda, double growth_beta, double nu, double p);

struct ZMSeriesResult {
  double partial_sum = 0.0;
  bool converged = false;
};

// Partial sum of sum_n |c_n|^q * M_n^(nu(q-2)/(nu-2)) * n^((nu-1)(q-2)/(nu-2))
// over n < n_terms, with the n = 0 power factor defined as 1 (the q -> 2
// limit then degenerates to sum |c_n|^2 as it must). Requires 2 <= q < nu and
// both sequences of length >= n_terms.
//
// The convergence flag estimates the implied term exponent from the last two
// dyadic blocks of the partial sums (terms ~ n^e summed over (T/2, 3T/4] vs
// (3T/4, T] determine e through a strictly monotone ratio) and reports
// convergence when e < -1 with a small guard band; a last-quarter
// contribution below 1e-6 of the total short-circuits to "converged" for
// super-polynomial decay. The flag is advisory; the inequality predictor
// below is the grounded criterion.
ZMSeriesResult zm_series(const std::vector<double>& c, const std::vector<double>& M,
                         double nu, double q, int n_terms);

// Strict convergence inequality for the regime series:
//   growth_beta*nu*(q-2)/(nu-2) + (nu-1)(q-2)/(nu-2) - lambda*q < -1.
// Requires nu > 2 and q >= 2.
bool check_convergence_inequality(double lambda, double growth_beta, double nu,
                                  double q);

// The computable factor (nu-2)/(nu-q)*q of the series constant bound (the
// absolute constant in front is unknown and never reported). Requires
// 2 <= q < nu.
double zm_constant_factor(double q, double nu);

}  // namespace fracspec
