#pragma once

// Internal __float128 helpers shared by the implementation files. Not
// installed; public headers never include <quadmath.h>.

#include <quadmath.h>

#include "fracspec/quad_real.hpp"

namespace fracspec::detail {

inline real128 q_lgamma(real128 x) { return lgammaq(x); }
inline real128 q_exp(real128 x) { return expq(x); }
inline real128 q_log(real128 x) { return logq(x); }
inline real128 q_abs(real128 x) { return fabsq(x); }
inline real128 q_sqrt(real128 x) { return sqrtq(x); }
inline real128 q_pow(real128 x, real128 y) { return powq(x, y); }

inline const real128 kPiQ = M_PIq;

// sin(pi x) with exact integer reduction, in quad precision.
inline real128 q_sin_pi(real128 x) {
  real128 n = nearbyintq(x);
  real128 f = x - n;
  real128 s = sinq(kPiQ * f);
  long long ni = static_cast<long long>(fmodq(fabsq(n), real128(2)));
  return (ni == 1) ? -s : s;
}

// 1/Gamma(x) as a total function in quad precision: exact 0 on the poles
// (snap window 1e-20, far below the spacing of any argument arising from
// double-precision alpha), reflection formula for negative non-integers.
inline real128 q_reciprocal_gamma(real128 x) {
  real128 n = nearbyintq(x);
  if (n <= 0 && fabsq(x - n) < real128(1e-20)) return 0;
  if (x > 0) return expq(-lgammaq(x));
  real128 s = q_sin_pi(x);
  real128 mag = lgammaq(1 - x) + logq(fabsq(s)) - logq(kPiQ);
  real128 v = expq(mag);
  return s < 0 ? -v : v;
}

// log Beta(x, y), arguments positive.
inline real128 q_log_beta(real128 x, real128 y) {
  return lgammaq(x) + lgammaq(y) - lgammaq(x + y);
}

}  // namespace fracspec::detail
