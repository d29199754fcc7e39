#include "fracspec/jacobi_basis.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "fracspec/errors.hpp"
#include "fracspec/special_functions.hpp"
#include "fit_detail.hpp"
#include "gauss_detail.hpp"
#include "quadmath_detail.hpp"

namespace fracspec {

using detail::golub_welsch;
using detail::monic_recurrence;
using detail::weight_mass;
using detail::weight_mass_q;

namespace {

std::atomic<std::uint64_t> g_next_basis_id{1};

}  // namespace

JacobiBasis::JacobiBasis(Interval interval, WeightParams weight, int max_degree)
    : interval_(interval), weight_(weight), max_degree_(max_degree),
      id_(g_next_basis_id.fetch_add(1)) {
  if (!std::isfinite(interval.a) || !std::isfinite(interval.b) ||
      !(interval.a < interval.b)) {
    throw ValidationError("JacobiBasis: interval must satisfy a < b with finite ends");
  }
  if (max_degree < 0) throw ValidationError("JacobiBasis: max_degree must be >= 0");
  const double bw = weight.beta_w, gw = weight.gamma_w;
  if (std::isnan(bw) || std::isnan(gw) || bw < -0.5 || bw > 0.5 || gw < -0.5 ||
      gw > 0.5) {
    throw DomainError("JacobiBasis: weight exponents must lie in [-1/2, 1/2], got (" +
                      std::to_string(bw) + ", " + std::to_string(gw) + ")");
  }

  std::vector<double> alpha, beta;
  monic_recurrence<double>(interval.a, interval.b, bw, gw, max_degree + 1, alpha,
                           beta, weight_mass(interval.a, interval.b, bw, gw));
  rec_alpha_ = alpha;
  rec_sqrt_beta_.resize(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) rec_sqrt_beta_[i] = std::sqrt(beta[i]);

  // Monomial expansions in quad precision, both origins, up to the cap.
  const int cap = std::min(max_degree, kMonomialCap);
  std::vector<real128> alq, beq;
  monic_recurrence<real128>(real128(interval.a), real128(interval.b), real128(bw),
                            real128(gw), cap + 1, alq, beq,
                            weight_mass_q(interval.a, interval.b, bw, gw));
  for (int pass = 0; pass < 2; ++pass) {
    const bool left = (pass == 0);
    auto& cache = left ? monomial_left_ : monomial_right_;
    cache.reserve(std::size_t(cap) + 1);
    // Monic polynomials tracked in the shifted variable u, where x = off + s*u.
    const real128 off = left ? real128(interval.a) : real128(interval.b);
    const real128 s = left ? real128(1) : real128(-1);
    std::vector<real128> prev, cur{real128(1)};
    real128 norm2 = beq[0];  // beta_0 * ... * beta_n accumulates below
    for (int n = 0; n <= cap; ++n) {
      MonomialPoly poly;
      poly.origin = left ? MonomialPoly::Origin::left : MonomialPoly::Origin::right;
      poly.a = interval.a;
      poly.b = interval.b;
      const real128 inv_norm = 1 / detail::q_sqrt(norm2);
      poly.coeffs.resize(cur.size());
      // pi_n is monic in x, so pi_n * inv_norm is p_n under the standard
      // positive-leading-coefficient convention; both origins expand the same
      // polynomial (the right-origin leading coefficient is (-1)^n / norm).
      for (std::size_t k = 0; k < cur.size(); ++k) {
        poly.coeffs[k] = cur[k] * inv_norm;
      }
      cache.push_back(std::move(poly));
      if (n == cap) break;
      // Advance the monic recurrence in u: pi_{n+1} = (x - al_n) pi_n - be_n pi_{n-1}.
      const real128 shift = off - alq[std::size_t(n)];
      std::vector<real128> nxt(cur.size() + 1, real128(0));
      for (std::size_t k = 0; k < cur.size(); ++k) {
        nxt[k + 1] += s * cur[k];
        nxt[k] += shift * cur[k];
      }
      if (!prev.empty()) {
        for (std::size_t k = 0; k < prev.size(); ++k) {
          nxt[k] -= beq[std::size_t(n)] * prev[k];
        }
      }
      prev = std::move(cur);
      cur = std::move(nxt);
      norm2 *= beq[std::size_t(n) + 1];
    }
  }
}

void JacobiBasis::require_degree(int n) const {
  if (n < 0 || n > max_degree_) {
    throw std::out_of_range("JacobiBasis: degree " + std::to_string(n) +
                            " outside [0, " + std::to_string(max_degree_) + "]");
  }
}

double JacobiBasis::norm_constant(int n) const {
  require_degree(n);
  double lead = 1.0;
  for (int k = 0; k <= n; ++k) lead /= rec_sqrt_beta_[std::size_t(k)];
  return lead;
}

double JacobiBasis::evaluate(int n, double x) const {
  require_degree(n);
  double pm1 = 0.0, p = 1.0 / rec_sqrt_beta_[0];
  for (int k = 0; k < n; ++k) {
    const double next =
        ((x - rec_alpha_[std::size_t(k)]) * p - rec_sqrt_beta_[std::size_t(k)] * pm1) /
        rec_sqrt_beta_[std::size_t(k) + 1];
    pm1 = p;
    p = next;
  }
  return p;
}

void JacobiBasis::evaluate_all(int n, double x, double* out) const {
  require_degree(n);
  double pm1 = 0.0, p = 1.0 / rec_sqrt_beta_[0];
  out[0] = p;
  for (int k = 0; k < n; ++k) {
    const double next =
        ((x - rec_alpha_[std::size_t(k)]) * p - rec_sqrt_beta_[std::size_t(k)] * pm1) /
        rec_sqrt_beta_[std::size_t(k) + 1];
    pm1 = p;
    p = next;
    out[k + 1] = p;
  }
}

void JacobiBasis::evaluate_all_derivative(int n, double x, double* out) const {
  require_degree(n);
  double pm1 = 0.0, p = 1.0 / rec_sqrt_beta_[0];
  double dm1 = 0.0, d = 0.0;
  out[0] = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sb = rec_sqrt_beta_[std::size_t(k)];
    const double sb1 = rec_sqrt_beta_[std::size_t(k) + 1];
    const double xa = x - rec_alpha_[std::size_t(k)];
    const double pnext = (xa * p - sb * pm1) / sb1;
    const double dnext = (p + xa * d - sb * dm1) / sb1;
    pm1 = p;
    p = pnext;
    dm1 = d;
    d = dnext;
    out[k + 1] = d;
  }
}

const MonomialPoly& JacobiBasis::monomial_expansion(int n,
                                                    MonomialPoly::Origin origin) const {
  require_degree(n);
  if (n > kMonomialCap) {
    throw CapabilityError(
        "monomial_expansion: degree " + std::to_string(n) +
        " exceeds the expansion cap " + std::to_string(kMonomialCap) +
        "; inner products above the cap go through the quadrature route");
  }
  return origin == MonomialPoly::Origin::left ? monomial_left_[std::size_t(n)]
                                              : monomial_right_[std::size_t(n)];
}

QuadratureRule JacobiBasis::quadrature_rule(int order) const {
  return modified_quadrature_rule(0.0, 0.0, order);
}

QuadratureRule JacobiBasis::modified_quadrature_rule(double extra_left,
                                                     double extra_right,
                                                     int order) const {
  if (order < 1) throw ValidationError("quadrature_rule: order must be >= 1");
  if (order > kMaxQuadratureOrder) {
    throw CapabilityError("quadrature_rule: order " + std::to_string(order) +
                          " exceeds the recurrence depth cap " +
                          std::to_string(kMaxQuadratureOrder));
  }
  const double bw = weight_.beta_w + extra_left;
  const double gw = weight_.gamma_w + extra_right;
  if (!(bw > -1.0) || !(gw > -1.0)) {
    throw DomainError("quadrature_rule: modified weight exponents (" +
                      std::to_string(bw) + ", " + std::to_string(gw) +
                      ") must stay > -1");
  }
  std::vector<double> alpha, beta;
  monic_recurrence<double>(interval_.a, interval_.b, bw, gw, order, alpha, beta,
                           weight_mass(interval_.a, interval_.b, bw, gw));
  return golub_welsch(alpha, beta, order);
}

CoefficientVector JacobiBasis::project(const std::vector<double>& values_at_nodes,
                                       const QuadratureRule& rule) const {
  if (values_at_nodes.size() != rule.nodes.size()) {
    throw ValidationError("project: sample count " +
                          std::to_string(values_at_nodes.size()) +
                          " does not match rule node count " +
                          std::to_string(rule.nodes.size()));
  }
  CoefficientVector out;
  out.basis_id = id_;
  out.values.assign(std::size_t(max_degree_) + 1, 0.0);
  std::vector<double> p(std::size_t(max_degree_) + 1);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    evaluate_all(max_degree_, rule.nodes[j], p.data());
    const double wf = rule.weights[j] * values_at_nodes[j];
    for (int n = 0; n <= max_degree_; ++n) out.values[std::size_t(n)] += wf * p[std::size_t(n)];
  }
  return out;
}

double JacobiBasis::partial_sum(const CoefficientVector& coeffs, int k, double x) const {
  if (coeffs.basis_id != id_) {
    throw ValidationError("partial_sum: coefficients belong to a different basis");
  }
  if (k < 0 || std::size_t(k) >= coeffs.size() || k > max_degree_) {
    throw std::out_of_range("partial_sum: k = " + std::to_string(k) +
                            " outside the coefficient/basis range");
  }
  double pm1 = 0.0, p = 1.0 / rec_sqrt_beta_[0];
  double acc = coeffs.values[0] * p;
  for (int j = 0; j < k; ++j) {
    const double next =
        ((x - rec_alpha_[std::size_t(j)]) * p - rec_sqrt_beta_[std::size_t(j)] * pm1) /
        rec_sqrt_beta_[std::size_t(j) + 1];
    pm1 = p;
    p = next;
    acc += coeffs.values[std::size_t(j) + 1] * p;
  }
  return acc;
}

std::pair<std::vector<double>, DecayFit> JacobiBasis::basis_norm_growth(
    double nu, int n_max) const {
  if (!(nu > 2.0)) {
    throw DomainError("basis_norm_growth: nu must exceed 2, got " + std::to_string(nu));
  }
  if (n_max < 0 || n_max > max_degree_) {
    throw std::out_of_range("basis_norm_growth: n_max outside [0, max_degree]");
  }
  const int order =
      std::min(kMaxQuadratureOrder,
               int(std::ceil(nu * double(n_max) / 2.0)) + 16);
  const QuadratureRule rule = quadrature_rule(order);
  std::vector<double> M(std::size_t(n_max) + 1, 0.0);
  std::vector<double> p(std::size_t(n_max) + 1);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    evaluate_all(n_max, rule.nodes[j], p.data());
    for (int n = 0; n <= n_max; ++n) {
      M[std::size_t(n)] += rule.weights[j] * std::pow(std::abs(p[std::size_t(n)]), nu);
    }
  }
  for (double& v : M) v = std::pow(v, 1.0 / nu);

  DecayFit fit;
  std::vector<double> xs, ys;
  const int lo = std::max(1, n_max / 2);
  for (int n = lo; n <= n_max; ++n) {
    if (M[std::size_t(n)] < 1e-14) continue;
    xs.push_back(std::log(double(n)));
    ys.push_back(std::log(M[std::size_t(n)]));
  }
  fit.window = {lo, n_max};
  if (xs.size() >= 2) {
    const auto line = detail::fit_line(xs, ys);
    fit.lambda_hat = -line.slope;  // growth exponent = -lambda_hat
    fit.amplitude = std::exp(line.intercept);
    fit.r_squared = line.r_squared;
  } else {
    fit.lambda_hat = 0.0;
    fit.amplitude = xs.empty() ? 0.0 : std::exp(ys[0]);
    fit.r_squared = 0.0;
  }
  return {std::move(M), fit};
}

}  // namespace fracspec
