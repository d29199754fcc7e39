#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fracspec/monomial_poly.hpp"
#include "fracspec/quad_real.hpp"

namespace fracspec {

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

// Exponents of the weight w(x) = (x-a)^beta_w (b-x)^gamma_w. The field names
// carry the _w suffix because the growth exponent of the norm sequence M_n
// (see DecayFit / zm_analysis) is an independent quantity that would
// otherwise collide with beta.
struct WeightParams {
  double beta_w = 0.0;
  double gamma_w = 0.0;
};

// Gauss rule for a Jacobi-type measure: integrates polynomials of degree
// <= 2*order - 1 exactly. Nodes lie in the open interval; weights are
// positive and sum to the measure of the interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

// Expansion coefficients f_n of a function in an orthonormal basis, stamped
// with the id of the generating basis so mixed-basis arithmetic is rejected.
struct CoefficientVector {
  std::vector<double> values;
  std::uint64_t basis_id = 0;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t n) const { return values[n]; }
};

// Result of a least-squares power-law fit log|c_m| = log(amplitude)
// - lambda_hat * log(m). For norm-growth sequences the fitted lambda_hat is
// negative and its negation is the growth exponent.
struct DecayFit {
  double lambda_hat = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
  std::pair<int, int> window{0, 0};  // inclusive index range actually used
};

// Orthonormal polynomial system {p_n} for the measure
// dmu1 = (x-a)^beta_w (b-x)^gamma_w dx on (a,b), with beta_w, gamma_w in
// [-1/2, 1/2]. Built once from the classical three-term recurrence mapped
// affinely from the reference interval; immutable afterwards and safe for
// concurrent reads.
class JacobiBasis {
 public:
  // Monomial expansions above this degree lose too many digits even in
  // extended precision; calls beyond it get a CapabilityError pointing to the
  // quadrature route.
  static constexpr int kMonomialCap = 30;
  static constexpr int kMaxQuadratureOrder = 4096;

  JacobiBasis(Interval interval, WeightParams weight, int max_degree);

  const Interval& interval() const { return interval_; }
  const WeightParams& weight() const { return weight_; }
  int max_degree() const { return max_degree_; }
  std::uint64_t id() const { return id_; }

  // Positive leading coefficient of p_n (the normalization constants of the
  // system; p_0 equals norm_constant(0) identically).
  double norm_constant(int n) const;

  // p_n(x) by the three-term recurrence (no monomial expansion involved).
  double evaluate(int n, double x) const;

  // p_0(x)..p_n(x) in one recurrence sweep; out must have n+1 slots.
  void evaluate_all(int n, double x, double* out) const;

  // d/dx p_0(x)..p_n(x) via the differentiated recurrence.
  void evaluate_all_derivative(int n, double x, double* out) const;

  // Exact coefficients of p_n in powers of (x-a) or (b-x). Cached at build
  // time up to min(max_degree, kMonomialCap).
  const MonomialPoly& monomial_expansion(int n, MonomialPoly::Origin origin) const;

  // Gauss rule for dmu1 itself.
  QuadratureRule quadrature_rule(int order) const;

  // Gauss rule for the modified measure
  // (x-a)^(beta_w + extra_left) (b-x)^(gamma_w + extra_right) dx.
  // Fractional images of polynomials are polynomials times exactly such a
  // factor, so rules of this family integrate them exactly. Both modified
  // exponents must stay > -1.
  QuadratureRule modified_quadrature_rule(double extra_left, double extra_right,
                                          int order) const;

  // f_n = sum_j w_j f(x_j) p_n(x_j) for n = 0..max_degree, from samples of f
  // at the rule's nodes.
  CoefficientVector project(const std::vector<double>& values_at_nodes,
                            const QuadratureRule& rule) const;

  // S_k f(x) = sum_{n<=k} f_n p_n(x).
  double partial_sum(const CoefficientVector& coeffs, int k, double x) const;

  // M_n = (integral |p_n|^nu dmu1)^(1/nu) for n = 0..n_max, plus a log-log
  // fit over the upper half-range [n_max/2, n_max]; a negative fitted
  // lambda_hat means M_n grows like n^(-lambda_hat). Requires nu > 2.
  std::pair<std::vector<double>, DecayFit> basis_norm_growth(double nu,
                                                             int n_max) const;

 private:
  void require_degree(int n) const;

  Interval interval_;
  WeightParams weight_;
  int max_degree_;
  std::uint64_t id_;

  // Orthonormal recurrence: sqrt(beta_{k+1}) p_{k+1} = (x - alpha_k) p_k
  //                          - sqrt(beta_k) p_{k-1},  p_0 = 1/sqrt(beta_0).
  std::vector<double> rec_alpha_;
  std::vector<double> rec_sqrt_beta_;  // sqrt_beta_[0] = sqrt(beta_0)

  std::vector<MonomialPoly> monomial_left_;
  std::vector<MonomialPoly> monomial_right_;
};

}  // namespace fracspec
