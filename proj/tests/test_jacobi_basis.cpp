#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/jacobi_basis.hpp"

using namespace fracspec;

TEST_CASE("constructor validates its inputs") {
  CHECK_THROWS_AS(JacobiBasis({1.0, 0.0}, {0.0, 0.0}, 4), ValidationError);
  CHECK_THROWS_AS(JacobiBasis({0.0, 0.0}, {0.0, 0.0}, 4), ValidationError);
  CHECK_THROWS_AS(JacobiBasis({0.0, 1.0}, {0.0, 0.0}, -1), ValidationError);
  CHECK_THROWS_AS(JacobiBasis({0.0, 1.0}, {0.7, 0.0}, 4), DomainError);
  CHECK_THROWS_AS(JacobiBasis({0.0, 1.0}, {0.0, -0.6}, 4), DomainError);
}

TEST_CASE("distinct instances get distinct ids") {
  JacobiBasis b1({0.0, 1.0}, {0.0, 0.0}, 4);
  JacobiBasis b2({0.0, 1.0}, {0.0, 0.0}, 4);
  CHECK(b1.id() != b2.id());
}

TEST_CASE("orthonormal Legendre on (-1,1)") {
  JacobiBasis basis({-1.0, 1.0}, {0.0, 0.0}, 24);
  for (double x : {-0.9, 0.0, 0.3, 1.0}) {
    CHECK(basis.evaluate(0, x) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(basis.evaluate(1, x) == doctest::Approx(std::sqrt(1.5) * x).epsilon(1e-14));
  }
}

TEST_CASE("orthonormal Legendre on (0,1)") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 24);
  for (double x : {0.0, 0.3, 0.5, 1.0}) {
    CHECK(basis.evaluate(0, x) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(basis.evaluate(1, x) == doctest::Approx(std::sqrt(3.0) * (2.0 * x - 1.0)).epsilon(1e-13));
    CHECK(basis.evaluate(2, x) ==
          doctest::Approx(std::sqrt(5.0) * (6.0 * x * x - 6.0 * x + 1.0)).epsilon(1e-13));
  }
  CHECK(basis.evaluate(2, 1.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("Chebyshev corner: constant is 1/sqrt(pi)") {
  JacobiBasis basis({-1.0, 1.0}, {-0.5, -0.5}, 8);
  CHECK(basis.evaluate(0, 0.2) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("evaluate rejects degrees beyond max_degree") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 6);
  CHECK_THROWS_AS(basis.evaluate(7, 0.5), std::out_of_range);
}

TEST_CASE("monomial expansions anchored at either endpoint") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 32);
  const MonomialPoly& left = basis.monomial_expansion(1, MonomialPoly::Origin::left);
  REQUIRE(left.degree() == 1);
  CHECK(left.coeffs_double()[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  CHECK(left.coeffs_double()[1] == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));

  const MonomialPoly& right = basis.monomial_expansion(1, MonomialPoly::Origin::right);
  CHECK(right.coeffs_double()[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(right.coeffs_double()[1] == doctest::Approx(-2.0 * std::sqrt(3.0)).epsilon(1e-14));

  // expansions above the precision cap are refused, not silently degraded
  CHECK_THROWS_AS(basis.monomial_expansion(31, MonomialPoly::Origin::left), CapabilityError);
}

TEST_CASE("monomial expansion evaluates to the recurrence value") {
  JacobiBasis basis({0.0, 2.0}, {0.5, -0.5}, 20);
  for (int n : {3, 9, 15, 20}) {
    const MonomialPoly& p = basis.monomial_expansion(n, MonomialPoly::Origin::left);
    for (double x : {0.1, 0.77, 1.5, 1.99}) {
      const double want = basis.evaluate(n, x);
      CHECK(std::abs(p.evaluate(x) - want) < 1e-9 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("quadrature integrates polynomials exactly") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 16);

  auto integrate_power = [&](int order, int k) {
    auto rule = basis.quadrature_rule(order);
    double s = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      s += rule.weights[j] * std::pow(rule.nodes[j], k);
    }
    return s;
  };
  CHECK(integrate_power(2, 3) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(integrate_power(8, 15) == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
}

TEST_CASE("quadrature weights sum to the weight mass") {
  JacobiBasis cheb({-1.0, 1.0}, {-0.5, -0.5}, 8);
  for (int order : {1, 4, 16, 64}) {
    auto rule = cheb.quadrature_rule(order);
    double s = 0.0;
    for (double w : rule.weights) s += w;
    CHECK(s == doctest::Approx(M_PI).epsilon(1e-12));
  }
}

TEST_CASE("quadrature order bounds") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 4);
  CHECK_THROWS_AS(basis.quadrature_rule(0), ValidationError);
  CHECK_THROWS_AS(basis.quadrature_rule(JacobiBasis::kMaxQuadratureOrder + 1), CapabilityError);
}

TEST_CASE("modified rules absorb extra endpoint powers") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 8);
  // weight x^(1/2): integral of x against it is 2/5
  auto rule = basis.modified_quadrature_rule(0.5, 0.0, 8);
  double s = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) s += rule.weights[j] * rule.nodes[j];
  CHECK(s == doctest::Approx(0.4).epsilon(1e-13));
  // modified exponents must stay integrable
  CHECK_THROWS_AS(basis.modified_quadrature_rule(-1.1, 0.0, 8), DomainError);
}

TEST_CASE("projection recovers coefficients of a polynomial") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 8);
  auto rule = basis.quadrature_rule(16);
  std::vector<double> vals(rule.nodes.size());
  for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = rule.nodes[j];
  auto c = basis.project(vals, rule);
  CHECK(c.values[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.values[1] == doctest::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-13));
  for (std::size_t n = 2; n < c.size(); ++n) CHECK(std::abs(c.values[n]) < 1e-14);

  // partial sums synthesize the function back
  for (double x : {0.0, 0.31, 0.77, 1.0}) {
    CHECK(basis.partial_sum(c, int(c.size()) - 1, x) == doctest::Approx(x).epsilon(1e-13));
  }
  CHECK_THROWS_AS(basis.project(std::vector<double>(3, 1.0), rule), ValidationError);
}

TEST_CASE("derivative evaluation matches the differentiated polynomial") {
  JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 8);
  std::vector<double> d(9, 0.0);
  basis.evaluate_all_derivative(2, 0.3, d.data());
  CHECK(d[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d[1] == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-13));
  CHECK(d[2] == doctest::Approx(std::sqrt(5.0) * (12.0 * 0.3 - 6.0)).epsilon(1e-13));
}

TEST_CASE("discrete orthonormality at a mixed corner") {
  JacobiBasis basis({0.25, 2.0}, {0.5, -0.5}, 10);
  auto rule = basis.quadrature_rule(24);
  std::vector<double> p(11);
  std::vector<std::vector<double>> gram(11, std::vector<double>(11, 0.0));
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    basis.evaluate_all(10, rule.nodes[j], p.data());
    for (int m = 0; m <= 10; ++m) {
      for (int n = 0; n <= 10; ++n) gram[m][n] += rule.weights[j] * p[m] * p[n];
    }
  }
  double dev = 0.0;
  for (int m = 0; m <= 10; ++m) {
    for (int n = 0; n <= 10; ++n) {
      dev = std::max(dev, std::abs(gram[m][n] - (m == n ? 1.0 : 0.0)));
    }
  }
  CHECK(dev < 1e-12);
}

TEST_CASE("norm growth sequence: Legendre reference values") {
  JacobiBasis leg({-1.0, 1.0}, {0.0, 0.0}, 200);
  auto [norms4, fit4] = leg.basis_norm_growth(4.0, 40);
  CHECK(norms4[0] == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-12));

  auto [norms6, fit6] = leg.basis_norm_growth(6.0, 200);
  CHECK(std::abs(-fit6.lambda_hat - 1.0 / 6.0) < 0.03);
  CHECK(fit6.r_squared > 0.99);

  CHECK_THROWS_AS(leg.basis_norm_growth(2.0, 40), DomainError);
}
