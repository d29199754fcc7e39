#include "fracspec/zm_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracspec/errors.hpp"
#include "fit_detail.hpp"

namespace fracspec {

namespace {

constexpr double kUsableFloor = 1e-14;

// Dyadic block-ratio model for the convergence flag: terms ~ n^e summed over
// (T/2, 3T/4] and (3T/4, T] have the ratio
//   R(u) = (1 - (3/4)^u) / ((3/4)^u - (1/2)^u),   u = e + 1,
// which is strictly increasing in u; the series converges iff u < 0.
double block_ratio_model(double u) {
  if (std::abs(u) < 1e-9) return std::log(4.0 / 3.0) / std::log(3.0 / 2.0);
  const double p34 = std::pow(0.75, u), p12 = std::pow(0.5, u);
  return (1.0 - p34) / (p34 - p12);
}

double solve_block_exponent(double ratio) {
  double lo = -60.0, hi = 60.0;
  if (ratio <= block_ratio_model(lo)) return lo;
  if (ratio >= block_ratio_model(hi)) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (block_ratio_model(mid) < ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::LOW: return "LOW";
    case Regime::MID: return "MID";
    case Regime::HIGH: return "HIGH";
  }
  return "?";
}

DecayFit fit_decay(const CoefficientVector& coeffs, int lo, int hi) {
  if (lo < 0 || hi >= int(coeffs.size()) || lo > hi) {
    throw ValidationError("fit_decay: window [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] outside the coefficient range");
  }
  std::vector<double> xs, ys;
  for (int m = std::max(lo, 1); m <= hi; ++m) {
    const double c = std::abs(coeffs.values[std::size_t(m)]);
    if (c < kUsableFloor) continue;
    xs.push_back(std::log(double(m)));
    ys.push_back(std::log(c));
  }
  if (xs.size() < 4) {
    throw InsufficientDataError(
        "fit_decay: fewer than 4 usable points in the window (entries below "
        "1e-14 are excluded)");
  }
  const auto line = detail::fit_line(xs, ys);
  DecayFit fit;
  fit.lambda_hat = -line.slope;
  fit.amplitude = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  fit.window = {lo, hi};
  return fit;
}

ZMReport classify_regime(double lambda, double growth_beta, double nu, double p) {
  if (std::isnan(lambda) || lambda < 0.0) {
    throw DomainError("classify_regime: lambda must be >= 0");
  }
  if (std::isnan(growth_beta) || growth_beta < 0.0) {
    throw DomainError("classify_regime: growth_beta must be >= 0");
  }
  if (!(nu > 2.0)) throw DomainError("classify_regime: nu must exceed 2");
  if (!(p >= 2.0)) throw DomainError("classify_regime: p must be >= 2");

  ZMReport rep;
  rep.p = p;
  rep.nu = nu;
  rep.lambda = lambda;
  rep.growth_beta = growth_beta;

  const double threshold = (nu * (growth_beta + 1.0) - 1.0) / (nu - 2.0);
  if (lambda <= 0.5) {
    rep.regime = Regime::LOW;
    rep.q_sup = p;
  } else if (lambda < threshold) {
    rep.regime = Regime::MID;
    rep.q_sup = nu * (2.0 * growth_beta + 1.0) /
                (nu * (growth_beta + 1.0 - lambda) + 2.0 * lambda - 1.0);
  } else {
    rep.regime = Regime::HIGH;
    rep.q_sup = std::numeric_limits<double>::infinity();
  }

  double probe;
  if (rep.regime == Regime::HIGH) {
    probe = 0.999 * nu;
  } else {
    probe = std::min(rep.q_sup - 1e-3, 0.999 * rep.q_sup);
  }
  probe = std::clamp(probe, 2.0, 0.999 * nu);
  rep.probe_q = probe;
  rep.constant_factor = zm_constant_factor(probe, nu);
  rep.series_value = std::numeric_limits<double>::quiet_NaN();
  rep.series_converged = false;
  rep.series_evaluated = false;
  return rep;
}

ZMSeriesResult zm_series(const std::vector<double>& c, const std::vector<double>& M,
                         double nu, double q, int n_terms) {
  if (!(nu > 2.0)) throw DomainError("zm_series: nu must exceed 2");
  if (!(q >= 2.0) || !(q < nu)) {
    throw DomainError("zm_series: q must satisfy 2 <= q < nu, got q = " +
                      std::to_string(q) + ", nu = " + std::to_string(nu));
  }
  if (n_terms < 1) throw ValidationError("zm_series: n_terms must be >= 1");
  if (int(c.size()) < n_terms || int(M.size()) < n_terms) {
    throw ValidationError("zm_series: sequences shorter than n_terms");
  }

  const double e_m = nu * (q - 2.0) / (nu - 2.0);          // exponent on M_n
  const double e_n = (nu - 1.0) * (q - 2.0) / (nu - 2.0);  // exponent on n
  const int T = n_terms;
  const int half = T / 2, three_q = (3 * T) / 4;

  double total = 0.0, sum_half = 0.0, sum_three_q = 0.0;
  for (int n = 0; n < T; ++n) {
    const double cn = std::abs(c[std::size_t(n)]);
    double term = std::pow(cn, q);
    if (term != 0.0) {
      term *= std::pow(std::abs(M[std::size_t(n)]), e_m);
      if (n > 0) term *= std::pow(double(n), e_n);  // n = 0 factor defined as 1
    }
    total += term;
    if (n < half) sum_half = total;
    if (n < three_q) sum_three_q = total;
  }

  ZMSeriesResult res;
  res.partial_sum = total;
  if (total == 0.0) {
    res.converged = true;
    return res;
  }
  const double q_prev = sum_three_q - sum_half;  // block (T/2, 3T/4]
  const double q_last = total - sum_three_q;     // block (3T/4, T]
  if (q_last / total < 1e-6) {
    // Super-polynomially decaying terms: converged without consulting the
    // block model (which degenerates when the blocks underflow).
    res.converged = true;
    return res;
  }
  if (q_prev <= 0.0) {
    res.converged = false;  // all mass in the final block: growing terms
    return res;
  }
  const double u_hat = solve_block_exponent(q_last / q_prev);
  // Guard band: the discrete blocks differ from the continuum model by
  // O(1/T), so an estimate within 0.01 of the divergence boundary (u = 0,
  // e.g. the harmonic series) must not be called convergent.
  res.converged = u_hat < -0.01;
  return res;
}

bool check_convergence_inequality(double lambda, double growth_beta, double nu,
                                  double q) {
  if (!(nu > 2.0)) throw DomainError("check_convergence_inequality: nu must exceed 2");
  if (!(q >= 2.0)) throw DomainError("check_convergence_inequality: q must be >= 2");
  const double lhs = growth_beta * nu * (q - 2.0) / (nu - 2.0) +
                     (nu - 1.0) * (q - 2.0) / (nu - 2.0) - lambda * q;
  return lhs < -1.0;
}

double zm_constant_factor(double q, double nu) {
  if (!(q >= 2.0) || !(q < nu)) {
    throw DomainError("zm_constant_factor: requires 2 <= q < nu");
  }
  return (nu - 2.0) / (nu - q) * q;
}

}  // namespace fracspec
