#pragma once

// Internal machinery for Gauss rules on Jacobi-type weights
// (x-a)^bw (b-x)^gw over (a,b): the monic three-term recurrence (classical
// coefficients on (-1,1) mapped affinely) and the Golub-Welsch
// eigen-decomposition. Shared by the basis and operator implementation files.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <vector>

#include "fracspec/jacobi_basis.hpp"
#include "fracspec/special_functions.hpp"
#include "quadmath_detail.hpp"

namespace fracspec::detail {

// integral_a^b (x-a)^bw (b-x)^gw dx = (b-a)^(bw+gw+1) B(bw+1, gw+1)
inline double weight_mass(double a, double b, double bw, double gw) {
  return std::pow(b - a, bw + gw + 1.0) * sf::beta(bw + 1.0, gw + 1.0);
}

inline real128 weight_mass_q(real128 a, real128 b, real128 bw, real128 gw) {
  return q_exp((bw + gw + 1) * q_log(b - a) + q_log_beta(bw + 1, gw + 1));
}

// Monic recurrence pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1} for
// k = 0..depth, with beta_0 = the weight mass (supplied so the double and
// quad instantiations can each compute it at their own precision).
template <typename Real>
void monic_recurrence(Real a, Real b, Real bw, Real gw, int depth,
                      std::vector<Real>& alpha, std::vector<Real>& beta,
                      Real beta0) {
  const Real A = gw, B = bw;
  const Real h = (b - a) / 2;
  alpha.assign(std::size_t(depth) + 1, Real(0));
  beta.assign(std::size_t(depth) + 1, Real(0));
  for (int k = 0; k <= depth; ++k) {
    Real ak, bk;
    if (k == 0) {
      ak = (B - A) / (A + B + 2);
      bk = beta0;
    } else {
      const Real t = 2 * Real(k) + A + B;
      ak = (B * B - A * A) / (t * (t + 2));
      if (k == 1) {
        bk = 4 * (A + 1) * (B + 1) / ((A + B + 2) * (A + B + 2) * (A + B + 3));
      } else {
        bk = 4 * Real(k) * (Real(k) + A) * (Real(k) + B) * (Real(k) + A + B) /
             (t * t * (t + 1) * (t - 1));
      }
      bk *= h * h;
    }
    alpha[std::size_t(k)] = a + h * (1 + ak);
    beta[std::size_t(k)] = bk;
  }
}

inline QuadratureRule golub_welsch(const std::vector<double>& alpha,
                                   const std::vector<double>& beta, int order) {
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(std::size_t(order));
  rule.weights.resize(std::size_t(order));
  if (order == 1) {
    rule.nodes[0] = alpha[0];
    rule.weights[0] = beta[0];
    return rule;
  }
  Eigen::VectorXd diag(order), sub(order - 1);
  for (int i = 0; i < order; ++i) diag[i] = alpha[std::size_t(i)];
  for (int i = 0; i + 1 < order; ++i) sub[i] = std::sqrt(beta[std::size_t(i) + 1]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  for (int i = 0; i < order; ++i) {
    rule.nodes[std::size_t(i)] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[std::size_t(i)] = beta[0] * v0 * v0;
  }
  return rule;
}

// Gauss rule for an arbitrary Jacobi-type weight, no [-1/2, 1/2] restriction
// (exponents only need to be > -1). Used for modified weights like
// (x-a)^(bw+alpha).
inline QuadratureRule gauss_jacobi_rule(double a, double b, double bw, double gw,
                                        int order) {
  std::vector<double> alpha, beta;
  monic_recurrence<double>(a, b, bw, gw, order, alpha, beta,
                           weight_mass(a, b, bw, gw));
  return golub_welsch(alpha, beta, order);
}

// 128-node Gauss-Legendre rule on (0,1), built once.
const QuadratureRule& unit_gl128();

}  // namespace fracspec::detail
