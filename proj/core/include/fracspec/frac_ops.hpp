#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracspec/jacobi_basis.hpp"
#include "fracspec/monomial_poly.hpp"

namespace fracspec {

enum class OperatorKind { integral, derivative };
enum class Side { left, right };

// Finite sum of real-exponent power terms c_j * (x-a)^sigma_j (left) or
// c_j * (b-x)^sigma_j (right): the exact image of a polynomial under
// fractional integration or differentiation. Exponents are strictly
// increasing and all > -1 (integrability near the anchored endpoint).
struct FracPoly {
  Side side = Side::left;
  double a = 0.0;
  double b = 1.0;
  std::vector<double> exponents;
  std::vector<double> coeffs;

  std::size_t terms() const { return coeffs.size(); }
  double evaluate(double x) const;
};

// Dense truncated Galerkin matrix of the fractional operator in an
// orthonormal Jacobi basis:
//   entry(m,n) = (p_m, I^alpha p_n)_mu1   for kind = integral,
//   entry(m,n) = (p_m, D^alpha p_n)_mu1   for kind = derivative,
// stored row-major, size (N+1) x (N+1).
struct OperatorMatrix {
  double alpha = 0.5;
  OperatorKind kind = OperatorKind::integral;
  std::uint64_t basis_id = 0;
  int size = 0;  // N+1
  std::vector<double> entries;

  double operator()(int m, int n) const { return entries[std::size_t(m) * size + n]; }
  double& at(int m, int n) { return entries[std::size_t(m) * size + n]; }
};

// Term-wise closed-form images on polynomials, alpha in (0,1):
//   I^alpha (x-a)^k = Gamma(k+1)/Gamma(k+alpha+1) * (x-a)^(k+alpha)
// (mirrored for the right side), and
//   D^alpha (x-a)^k = Gamma(k+1)/Gamma(k-alpha+1) * (x-a)^(k-alpha).
FracPoly frac_integral_poly(const MonomialPoly& p, double alpha, Side side);
FracPoly frac_derivative_poly(const MonomialPoly& p, double alpha);

// Term-wise Gamma-ratio action on an existing FracPoly (left side only):
// exponents shift by +alpha (integral) or -alpha (derivative). Derivative
// terms whose Gamma denominator lands on a pole vanish exactly; a term whose
// exponent would fall to <= -1 raises DomainError.
FracPoly frac_apply_fracpoly(const FracPoly& p, double alpha, OperatorKind op);

// Left Riemann-Liouville integral (1/Gamma(alpha)) * integral_a^x
// f(t)(x-t)^(alpha-1) dt by the singularity-removing substitution
// t = x - (x-a)s^(1/alpha) and a 128-node Gauss-Legendre rule in s.
// Target accuracy ~1e-9 for analytic f. Requires a < x.
double frac_integral_pointwise(const std::function<double(double)>& f,
                               double alpha, double a, double x);

// Right-sided mirror: (1/Gamma(alpha)) * integral_x^b f(t)(t-x)^(alpha-1) dt
// via t = x + (b-x)s^(1/alpha). Requires x < b.
double frac_integral_pointwise_right(const std::function<double(double)>& f,
                                     double alpha, double b, double x);

// Weighted adjoint of the operator pair: (w^-1 I^alpha_{b-} w h)(x) at an
// interior point, with w the basis weight. The weight singularities are
// absorbed into the quadrature measure, so negative exponents cost no
// accuracy.
double weighted_adjoint_apply(const JacobiBasis& basis, double alpha,
                              const std::function<double(double)>& h, double x);

// Canonical matrix assembly. Columns up to the monomial cap use the exact
// Gamma/Beta closed form (log-space __float128 accumulation); columns beyond
// the cap -- and the whole matrix in operator_matrix_quadrature -- use the
// independent quadrature route, which pairs a Gauss rule for the modified
// weight (exact for the polynomial factor) with the pointwise substitution
// above. kind = derivative requires beta_w - alpha > -1 (otherwise the
// entries are divergent integrals) and raises DomainError naming the
// conflict.
OperatorMatrix operator_matrix(const JacobiBasis& basis, double alpha,
                               OperatorKind kind, int N);
OperatorMatrix operator_matrix_quadrature(const JacobiBasis& basis, double alpha,
                                          OperatorKind kind, int N);

}  // namespace fracspec
