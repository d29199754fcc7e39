#include "fracspec/frac_ops.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/special_functions.hpp"
#include "gauss_detail.hpp"
#include "quadmath_detail.hpp"

namespace fracspec {

namespace detail {

const QuadratureRule& unit_gl128() {
  static const QuadratureRule rule = gauss_jacobi_rule(0.0, 1.0, 0.0, 0.0, 128);
  return rule;
}

}  // namespace detail

namespace {

void require_alpha(double alpha) {
  if (std::isnan(alpha) || !(alpha > 0.0) || !(alpha < 1.0)) {
    throw DomainError("fractional order alpha must lie in (0,1), got " +
                      std::to_string(alpha));
  }
}

void require_derivative_integrable(const JacobiBasis& basis, double alpha) {
  const double bw = basis.weight().beta_w;
  if (!(bw - alpha > -1.0)) {
    throw DomainError(
        "derivative-kind matrix: weight exponent beta_w = " + std::to_string(bw) +
        " with alpha = " + std::to_string(alpha) +
        " makes (x-a)^(beta_w-alpha) non-integrable (needs beta_w - alpha > -1)");
  }
}

// 1 - s^(1/alpha), computed through expm1/log1p so it stays accurate as s -> 1.
double one_minus_pow(double s, double inv_alpha) {
  return -std::expm1(std::log1p(s - 1.0) * inv_alpha);
}

}  // namespace

double FracPoly::evaluate(double x) const {
  const double u = (side == Side::left) ? x - a : b - x;
  double acc = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    acc += coeffs[j] * std::pow(u, exponents[j]);
  }
  return acc;
}

FracPoly frac_integral_poly(const MonomialPoly& p, double alpha, Side side) {
  require_alpha(alpha);
  const bool left_in = p.origin == MonomialPoly::Origin::left;
  if (left_in != (side == Side::left)) {
    throw ValidationError("frac_integral_poly: polynomial origin must match the operator side");
  }
  FracPoly out;
  out.side = side;
  out.a = p.a;
  out.b = p.b;
  out.exponents.reserve(p.coeffs.size());
  out.coeffs.reserve(p.coeffs.size());
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    out.exponents.push_back(double(k) + alpha);
    out.coeffs.push_back(to_double(p.coeffs[k]) *
                         sf::gamma_ratio(double(k) + 1.0, double(k) + alpha + 1.0));
  }
  return out;
}

FracPoly frac_derivative_poly(const MonomialPoly& p, double alpha) {
  require_alpha(alpha);
  if (p.origin != MonomialPoly::Origin::left) {
    throw ValidationError("frac_derivative_poly: left-origin polynomial required");
  }
  FracPoly out;
  out.side = Side::left;
  out.a = p.a;
  out.b = p.b;
  out.exponents.reserve(p.coeffs.size());
  out.coeffs.reserve(p.coeffs.size());
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    // exponent k - alpha > -1 always (k >= 0, alpha < 1)
    out.exponents.push_back(double(k) - alpha);
    out.coeffs.push_back(to_double(p.coeffs[k]) *
                         sf::gamma_ratio(double(k) + 1.0, double(k) - alpha + 1.0));
  }
  return out;
}

FracPoly frac_apply_fracpoly(const FracPoly& p, double alpha, OperatorKind op) {
  require_alpha(alpha);
  if (p.side != Side::left) {
    throw ValidationError("frac_apply_fracpoly: left-side FracPoly required");
  }
  FracPoly out;
  out.side = Side::left;
  out.a = p.a;
  out.b = p.b;
  for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
    const double sigma = p.exponents[j];
    const double shifted = (op == OperatorKind::integral) ? sigma + alpha : sigma - alpha;
    const double ratio = sf::gamma_ratio(sigma + 1.0, shifted + 1.0);
    const double c = p.coeffs[j] * ratio;
    if (c == 0.0) continue;  // Gamma-pole annihilation (or a zero input term)
    if (!(shifted > -1.0)) {
      throw DomainError("frac_apply_fracpoly: term exponent " + std::to_string(sigma) +
                        " would shift to " + std::to_string(shifted) +
                        " <= -1 (non-integrable)");
    }
    out.exponents.push_back(shifted);
    out.coeffs.push_back(c);
  }
  return out;
}

double frac_integral_pointwise(const std::function<double(double)>& f, double alpha,
                               double a, double x) {
  require_alpha(alpha);
  if (!(x > a)) {
    throw ValidationError("frac_integral_pointwise: requires x > a, got x = " +
                          std::to_string(x) + ", a = " + std::to_string(a));
  }
  const auto& gl = detail::unit_gl128();
  const double inv_alpha = 1.0 / alpha;
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = x - (x - a) * std::pow(gl.nodes[i], inv_alpha);
    acc += gl.weights[i] * f(t);
  }
  return std::pow(x - a, alpha) / (alpha * std::exp(sf::log_gamma(alpha))) * acc;
}

double frac_integral_pointwise_right(const std::function<double(double)>& f,
                                     double alpha, double b, double x) {
  require_alpha(alpha);
  if (!(x < b)) {
    throw ValidationError("frac_integral_pointwise_right: requires x < b, got x = " +
                          std::to_string(x) + ", b = " + std::to_string(b));
  }
  const auto& gl = detail::unit_gl128();
  const double inv_alpha = 1.0 / alpha;
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = x + (b - x) * std::pow(gl.nodes[i], inv_alpha);
    acc += gl.weights[i] * f(t);
  }
  return std::pow(b - x, alpha) / (alpha * std::exp(sf::log_gamma(alpha))) * acc;
}

double weighted_adjoint_apply(const JacobiBasis& basis, double alpha,
                              const std::function<double(double)>& h, double x) {
  require_alpha(alpha);
  const double a = basis.interval().a, b = basis.interval().b;
  const double bw = basis.weight().beta_w, gw = basis.weight().gamma_w;
  if (x < a || x > b) {
    throw ValidationError("weighted_adjoint_apply: x outside [a, b]");
  }
  if (x == a && bw != 0.0) {
    throw DomainError("weighted_adjoint_apply: x = a with a nonzero left weight exponent");
  }
  if (x == b && gw != 0.0) {
    throw DomainError("weighted_adjoint_apply: x = b with a nonzero right weight exponent");
  }
  if (x == b) return 0.0;  // prefactor (b-x)^alpha vanishes, everything else bounded

  // (w^-1 I^alpha_{b-} w h)(x) with the substitution t = x + (b-x)s^(1/alpha):
  // the factor (b-t)^gamma_w = ((b-x)(1 - s^(1/alpha)))^gamma_w splits into
  // (1-s)^gamma_w -- absorbed into a Gauss-Jacobi rule in s -- times the
  // smooth rho(s)^gamma_w with rho = (1-s^(1/alpha))/(1-s); the (b-x)^gamma_w
  // cancels against the inverse weight at x.
  const int order = 128;
  const QuadratureRule srule =
      detail::gauss_jacobi_rule(0.0, 1.0, 0.0, gw, order);
  const double inv_alpha = 1.0 / alpha;
  double acc = 0.0;
  for (std::size_t i = 0; i < srule.nodes.size(); ++i) {
    const double s = srule.nodes[i];
    const double omp = one_minus_pow(s, inv_alpha);  // 1 - s^(1/alpha)
    const double t = b - (b - x) * omp;              // = x + (b-x) s^(1/alpha)
    const double rho = omp / (1.0 - s);
    double val = h(t) * std::pow(rho, gw);
    if (bw != 0.0) val *= std::pow(t - a, bw);
    acc += srule.weights[i] * val;
  }
  double out = std::pow(b - x, alpha) / (alpha * std::exp(sf::log_gamma(alpha))) * acc;
  if (bw != 0.0) out *= std::pow(x - a, -bw);
  return out;
}

namespace {

// ---- exact entry assembly (columns up to the monomial cap) -----------------
//
// With p_n expanded as sum_k c_k (x-a)^k, the operator image contributes
// Gamma(k+1) * (x-a)^(k +- alpha) / Gamma(k +- alpha + 1) per term, and the
// row functional has the closed form
//   integral (x-a)^s w(x) p_m(x) dx
//     = inv_norm_m * Gamma(s+1)/Gamma(s-m+1)
//       * (b-a)^(s+bw+gw+m+1) * B(s+bw+1, gw+m+1),
// so each entry is a single sum over k (the 1/Gamma(k+-alpha+1) of the image
// cancels against Gamma(s+1) with s = k +- alpha). Everything is accumulated
// in __float128: the sum cancels by up to ~5e24 at the degree cap, which quad
// precision absorbs down to ~1e-9 relative while double would return noise.
void assemble_exact_columns(const JacobiBasis& basis, double alpha,
                            OperatorKind kind, int n_hi, OperatorMatrix& out) {
  using detail::q_exp;
  using detail::q_lgamma;
  using detail::q_log;
  using detail::q_log_beta;
  using detail::q_reciprocal_gamma;
  using detail::q_sqrt;

  const int size = out.size;
  const int rows = size - 1;  // max row index
  const real128 a = basis.interval().a, b = basis.interval().b;
  const real128 bw = basis.weight().beta_w, gw = basis.weight().gamma_w;
  const real128 s_off = (kind == OperatorKind::integral) ? real128(alpha) : real128(-alpha);
  const real128 logL = q_log(b - a);

  // factorial logs up to max(k, m) (k = monomial power of the column
  // expansion, m = row index)
  const int fact_hi = std::max(n_hi, rows);
  std::vector<real128> lg_fact(std::size_t(fact_hi) + 1);
  for (int k = 0; k <= fact_hi; ++k) lg_fact[std::size_t(k)] = q_lgamma(real128(k) + 1);
  std::vector<real128> lg_b1(std::size_t(n_hi) + 1);
  for (int k = 0; k <= n_hi; ++k) {
    lg_b1[std::size_t(k)] = q_lgamma(real128(k) + s_off + bw + 1);
  }
  // m-indexed and (k+m)-, (k-m)-indexed pieces
  std::vector<real128> lg_b2(std::size_t(rows) + 1);
  std::vector<real128> inv_norm(std::size_t(rows) + 1);
  for (int m = 0; m <= rows; ++m) {
    lg_b2[std::size_t(m)] = q_lgamma(gw + real128(m) + 1);
    // squared norm of the un-normalized row polynomial:
    //   m! * S_m * (b-a)^(bw+gw+2m+1) * B(bw+m+1, gw+m+1),
    //   S_m = sum_j C(m,j) G(bw+m+1)/G(bw+m-j+1) * G(gw+m+1)/G(gw+j+1)
    real128 S = 0;
    const real128 lg_top = q_lgamma(bw + real128(m) + 1) + q_lgamma(gw + real128(m) + 1);
    for (int j = 0; j <= m; ++j) {
      const real128 lg_binom = lg_fact[std::size_t(m)] - lg_fact[std::size_t(j)] -
                               lg_fact[std::size_t(m - j)];
      S += q_exp(lg_binom + lg_top - q_lgamma(bw + real128(m - j) + 1) -
                 q_lgamma(gw + real128(j) + 1));
    }
    const real128 log_r2 = lg_fact[std::size_t(m)] + q_log(S) +
                           (bw + gw + 2 * real128(m) + 1) * logL +
                           q_log_beta(bw + real128(m) + 1, gw + real128(m) + 1);
    inv_norm[std::size_t(m)] = q_exp(real128(-0.5) * log_r2);
  }
  std::vector<real128> lg_b12(std::size_t(n_hi + rows) + 1);
  std::vector<real128> pow_l(std::size_t(n_hi + rows) + 1);
  for (int t = 0; t <= n_hi + rows; ++t) {
    lg_b12[std::size_t(t)] = q_lgamma(real128(t) + s_off + bw + gw + 2);
    pow_l[std::size_t(t)] = (real128(t) + s_off + bw + gw + 1) * logL;
  }
  std::vector<real128> rgam(std::size_t(n_hi + rows) + 1);
  for (int d = -rows; d <= n_hi; ++d) {
    rgam[std::size_t(d + rows)] = q_reciprocal_gamma(real128(d) + 1 + s_off);
  }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int m = 0; m <= rows; ++m) {
    for (int n = 0; n <= n_hi; ++n) {
      const MonomialPoly& pn = basis.monomial_expansion(n, MonomialPoly::Origin::left);
      real128 acc = 0;
      for (int k = 0; k <= n; ++k) {
        const real128 ck = pn.coeffs[std::size_t(k)];
        if (ck == 0) continue;
        const real128 mag = q_exp(lg_fact[std::size_t(k)] + lg_b1[std::size_t(k)] +
                                  lg_b2[std::size_t(m)] - lg_b12[std::size_t(k + m)] +
                                  pow_l[std::size_t(k + m)]);
        acc += ck * mag * rgam[std::size_t(k - m + rows)];
      }
      out.at(m, n) = to_double(inv_norm[std::size_t(m)] * acc);
    }
  }
}

// ---- quadrature assembly (independent route; also serves columns beyond the
//      monomial cap) -------------------------------------------------------
//
// I^alpha p_n(x) = (x-a)^alpha/(alpha Gamma(alpha)) * g_n(x) with
// g_n(x) = integral_0^1 p_n(x - (x-a)s^(1/alpha)) ds a degree-n polynomial in
// x, so a Gauss rule for the modified weight (bw+alpha, gw) integrates
// p_m * g_n * modified-weight exactly; the only numerical content is the
// 128-node inner rule. The derivative kind goes through
// D^alpha p = p(a)(x-a)^(-alpha)/Gamma(1-alpha) + I^(1-alpha) p', whose two
// pieces use modified weights (bw-alpha, gw) and (bw+1-alpha, gw).
void assemble_quadrature_columns(const JacobiBasis& basis, double alpha,
                                 OperatorKind kind, int n_lo, int n_hi,
                                 OperatorMatrix& out) {
  const int size = out.size;
  const int rows = size - 1;
  const double a = basis.interval().a;
  const auto& gl = detail::unit_gl128();
  const int n_inner = int(gl.nodes.size());
  const int order = size + 8;

  const double frac_alpha = (kind == OperatorKind::integral) ? alpha : 1.0 - alpha;
  const double inv_frac_alpha = 1.0 / frac_alpha;
  const double pref =
      1.0 / (frac_alpha * std::exp(sf::log_gamma(frac_alpha)));

  const QuadratureRule outer = basis.modified_quadrature_rule(
      (kind == OperatorKind::integral) ? alpha : 1.0 - alpha, 0.0, order);
  const int n_outer = int(outer.nodes.size());

  // inner integrals: g[q][n] for each outer node q and column n
  std::vector<double> g(std::size_t(n_outer) * std::size_t(n_hi + 1), 0.0);
  std::vector<double> work(std::size_t(n_hi) + 1);
  for (int qi = 0; qi < n_outer; ++qi) {
    const double y = outer.nodes[std::size_t(qi)];
    for (int i = 0; i < n_inner; ++i) {
      const double t = y - (y - a) * std::pow(gl.nodes[std::size_t(i)], inv_frac_alpha);
      const double w = gl.weights[std::size_t(i)];
      if (kind == OperatorKind::integral) {
        basis.evaluate_all(n_hi, t, work.data());
      } else {
        basis.evaluate_all_derivative(n_hi, t, work.data());
      }
      double* grow = &g[std::size_t(qi) * std::size_t(n_hi + 1)];
      for (int n = 0; n <= n_hi; ++n) grow[n] += w * work[std::size_t(n)];
    }
  }

  // row polynomial values at the outer nodes
  std::vector<double> pm(std::size_t(n_outer) * std::size_t(rows + 1));
  std::vector<double> prow(std::size_t(rows) + 1);
  for (int qi = 0; qi < n_outer; ++qi) {
    basis.evaluate_all(rows, outer.nodes[std::size_t(qi)], prow.data());
    for (int m = 0; m <= rows; ++m) {
      pm[std::size_t(qi) * std::size_t(rows + 1) + std::size_t(m)] = prow[std::size_t(m)];
    }
  }

  std::vector<double> singular_row;  // integral p_m (x-a)^(bw-alpha)(b-x)^gw dx
  std::vector<double> pn_at_a;
  if (kind == OperatorKind::derivative) {
    const QuadratureRule sing = basis.modified_quadrature_rule(-alpha, 0.0, order);
    singular_row.assign(std::size_t(rows) + 1, 0.0);
    for (std::size_t j = 0; j < sing.nodes.size(); ++j) {
      basis.evaluate_all(rows, sing.nodes[j], prow.data());
      for (int m = 0; m <= rows; ++m) {
        singular_row[std::size_t(m)] += sing.weights[j] * prow[std::size_t(m)];
      }
    }
    pn_at_a.resize(std::size_t(n_hi) + 1);
    basis.evaluate_all(n_hi, a, pn_at_a.data());
    const double inv_gamma = sf::reciprocal_gamma(1.0 - alpha);
    for (double& v : pn_at_a) v *= inv_gamma;
  }

  for (int m = 0; m <= rows; ++m) {
    for (int n = n_lo; n <= n_hi; ++n) {
      double acc = 0.0;
      for (int qi = 0; qi < n_outer; ++qi) {
        acc += outer.weights[std::size_t(qi)] *
               pm[std::size_t(qi) * std::size_t(rows + 1) + std::size_t(m)] *
               g[std::size_t(qi) * std::size_t(n_hi + 1) + std::size_t(n)];
      }
      double entry = pref * acc;
      if (kind == OperatorKind::derivative) {
        entry += pn_at_a[std::size_t(n)] * singular_row[std::size_t(m)];
      }
      out.at(m, n) = entry;
    }
  }
}

}  // namespace

OperatorMatrix operator_matrix(const JacobiBasis& basis, double alpha,
                               OperatorKind kind, int N) {
  require_alpha(alpha);
  if (N < 0) throw ValidationError("operator_matrix: N must be >= 0");
  if (N > basis.max_degree()) {
    throw ValidationError("operator_matrix: N exceeds the basis max_degree");
  }
  if (kind == OperatorKind::derivative) require_derivative_integrable(basis, alpha);

  OperatorMatrix out;
  out.alpha = alpha;
  out.kind = kind;
  out.basis_id = basis.id();
  out.size = N + 1;
  out.entries.assign(std::size_t(N + 1) * std::size_t(N + 1), 0.0);

  const int exact_hi = std::min(N, JacobiBasis::kMonomialCap);
  assemble_exact_columns(basis, alpha, kind, exact_hi, out);
  if (N > exact_hi) {
    assemble_quadrature_columns(basis, alpha, kind, exact_hi + 1, N, out);
  }
  return out;
}

OperatorMatrix operator_matrix_quadrature(const JacobiBasis& basis, double alpha,
                                          OperatorKind kind, int N) {
  require_alpha(alpha);
  if (N < 0) throw ValidationError("operator_matrix_quadrature: N must be >= 0");
  if (N > basis.max_degree()) {
    throw ValidationError("operator_matrix_quadrature: N exceeds the basis max_degree");
  }
  if (kind == OperatorKind::derivative) require_derivative_integrable(basis, alpha);

  OperatorMatrix out;
  out.alpha = alpha;
  out.kind = kind;
  out.basis_id = basis.id();
  out.size = N + 1;
  out.entries.assign(std::size_t(N + 1) * std::size_t(N + 1), 0.0);
  assemble_quadrature_columns(basis, alpha, kind, 0, N, out);
  return out;
}

}  // namespace fracspec
