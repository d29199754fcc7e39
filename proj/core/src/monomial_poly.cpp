#include "fracspec/monomial_poly.hpp"

#include "quadmath_detail.hpp"

namespace fracspec {

double MonomialPoly::coeff(std::size_t k) const {
  return k < coeffs.size() ? to_double(coeffs[k]) : 0.0;
}

std::vector<double> MonomialPoly::coeffs_double() const {
  std::vector<double> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = to_double(coeffs[k]);
  return out;
}

double MonomialPoly::evaluate(double x) const {
  real128 u = (origin == Origin::left) ? real128(x) - real128(a)
                                       : real128(b) - real128(x);
  real128 acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * u + coeffs[k];
  return to_double(acc);
}

void MonomialPoly::trim() {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
}

}  // namespace fracspec
