#pragma once

// Gamma-family scalars. Every operator-matrix entry and closed-form
// fractional image is a product of these; they are kept in log space by the
// callers so that large arguments neither overflow nor underflow.

namespace fracspec::sf {

// log(Gamma(x)) for x > 0. Throws DomainError otherwise.
// Relative accuracy ~1e-14 on (0, 1e4).
double log_gamma(double x);

// 1/Gamma(x) as a total function on finite reals: returns exactly 0 at the
// poles x = 0, -1, -2, ... (snap window 1e-8 around each pole) and carries
// the correct sign for negative non-integer x via the reflection formula.
// Throws ValidationError on NaN.
double reciprocal_gamma(double x);

// Euler Beta B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y) for x, y > 0, computed in
// log space. Symmetric in (x, y) by construction. Throws DomainError on
// nonpositive arguments.
double beta(double x, double y);

// Gamma(num)/Gamma(den) for num > 0 and finite den; exactly 0 when den is a
// nonpositive integer. Throws DomainError when num <= 0.
double gamma_ratio(double num, double den);

// sin(pi*x) with exact argument reduction (accurate near integers, where the
// naive std::sin(pi*x) loses all digits). Used by the reflection formula.
double sin_pi(double x);

}  // namespace fracspec::sf
