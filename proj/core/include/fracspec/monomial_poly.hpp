#pragma once

#include <cstddef>
#include <vector>

#include "fracspec/quad_real.hpp"

namespace fracspec {

// A polynomial written in powers of (x-a) ("left" origin) or (b-x) ("right"
// origin). This is the exact-arithmetic carrier for closed-form fractional
// images: term-wise Gamma-ratio maps act on exactly these coefficients.
//
// Coefficients are held in __float128 because orthonormal Jacobi expansions
// have alternating coefficients of magnitude ~(3+2*sqrt(2))^n; with
// double-rounded coefficients, evaluation near the far endpoint is wrong in
// the second digit already around degree 20.
struct MonomialPoly {
  enum class Origin { left, right };

  Origin origin = Origin::left;
  double a = 0.0;  // interval ends the origin refers to
  double b = 1.0;
  std::vector<real128> coeffs;  // c_0..c_d; trailing nonzero unless the zero polynomial

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  // Rounded-to-double views of the exact coefficients.
  double coeff(std::size_t k) const;
  std::vector<double> coeffs_double() const;

  // Horner evaluation in the shifted variable, carried out in __float128 and
  // rounded once at the end.
  double evaluate(double x) const;

  // Drops a trailing run of exact zeros (enforces the trailing-coefficient
  // invariant after arithmetic that may cancel the leading term).
  void trim();
};

}  // namespace fracspec
