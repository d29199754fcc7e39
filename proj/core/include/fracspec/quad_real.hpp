#pragma once

// Extended-precision scalar used for the internal kernels that suffer heavy
// cancellation: monomial coefficients of high-degree orthonormal polynomials
// (magnitude ~(3+2*sqrt(2))^n) and the alternating Gamma/Beta sums of the
// operator-matrix entries (observed |term|/|entry| up to ~5e24 at the degree
// cap). IEEE double would lose every digit there; __float128 keeps ~1e-9
// relative accuracy at the worst corner and far better everywhere else.
//
// The type itself is a GCC/Clang builtin, so the header stays free of
// <quadmath.h>; the arithmetic helpers live in the implementation files.

namespace fracspec {

using real128 = __float128;

inline double to_double(real128 v) { return static_cast<double>(v); }

}  // namespace fracspec
