#include <cmath>
#include <vector>

#include "doctest.h"
#include "gjb/polynomial.hpp"
#include "oracles.hpp"

using gjb::Polynomial;

TEST_SUITE("polynomial") {

TEST_CASE("zero polynomial has degree -1 and evaluates to 0") {
  Polynomial z;
  CHECK(z.degree() == -1);
  CHECK(z(3.7) == 0.0);
  CHECK(Polynomial(std::vector<double>{}) == z);
  CHECK(Polynomial(std::vector<double>{0.0, 0.0}) == z);
}

TEST_CASE("trailing zero coefficients are trimmed") {
  Polynomial p({1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(p.coeffs().size() == 2);
  CHECK(p.coeff(0) == 1.0);
  CHECK(p.coeff(1) == 2.0);
  CHECK(p.coeff(2) == 0.0);   // outside stored range
  CHECK(p.coeff(100) == 0.0);
}

TEST_CASE("constant and monomial constructors") {
  CHECK(Polynomial::constant(5.0).degree() == 0);
  CHECK(Polynomial::constant(5.0)(123.0) == 5.0);
  CHECK(Polynomial::constant(0.0).degree() == -1);
  Polynomial x3 = Polynomial::monomial(3);
  CHECK(x3.degree() == 3);
  CHECK(x3(2.0) == 8.0);
  Polynomial m = Polynomial::monomial(2, -4.5);
  CHECK(m(3.0) == doctest::Approx(-40.5));
}

TEST_CASE("evaluation equals the direct power sum") {
  Polynomial p({0.5, -1.0, 2.0, 0.0, -3.0, 7.0});
  for (double x : {-2.5, -1.0, 0.0, 0.3, 1.0, 4.2}) {
    double direct = 0.0;
    for (int j = 0; j <= p.degree(); ++j) direct += p.coeff(j) * std::pow(x, j);
    CHECK(p(x) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("addition and subtraction, including cancellation of the top term") {
  Polynomial a({1.0, 2.0, 3.0});
  Polynomial b({0.0, 1.0, -3.0});
  Polynomial s = a + b;
  CHECK(s.degree() == 1);  // x^2 terms cancel exactly
  CHECK(s.coeff(0) == 1.0);
  CHECK(s.coeff(1) == 3.0);
  CHECK((a - a).degree() == -1);
  Polynomial d = a - b;
  CHECK(d.coeff(2) == 6.0);
}

TEST_CASE("scalar multiplication from both sides; zero scalar annihilates") {
  Polynomial a({1.0, -2.0});
  CHECK((2.0 * a) == (a * 2.0));
  CHECK((3.0 * a)(5.0) == doctest::Approx(3.0 * a(5.0)));
  CHECK((a * 0.0).degree() == -1);
}

TEST_CASE("product matches the naive convolution oracle up to degree 24") {
  oracle::TestRng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    int da = 1 + static_cast<int>(rng.uniform() * 12);
    int db = 1 + static_cast<int>(rng.uniform() * 12);
    std::vector<double> ca(static_cast<std::size_t>(da) + 1);
    std::vector<double> cb(static_cast<std::size_t>(db) + 1);
    for (double& c : ca) c = rng.value();
    for (double& c : cb) c = rng.value();
    ca.back() += 1.0;  // keep the degrees honest
    cb.back() += 1.0;
    Polynomial p(ca), q(cb);
    Polynomial prod = p * q;
    std::vector<double> ref = oracle::convolve(ca, cb);
    REQUIRE(prod.degree() == da + db);
    for (int j = 0; j <= prod.degree(); ++j) {
      CHECK(prod.coeff(j) ==
            doctest::Approx(ref[static_cast<std::size_t>(j)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("product against the zero polynomial is zero") {
  Polynomial p({3.0, 1.0});
  Polynomial z;
  CHECK((p * z).degree() == -1);
  CHECK((z * p).degree() == -1);
}

TEST_CASE("product evaluation is consistent with factor evaluation") {
  Polynomial p({1.0, 0.0, -2.0, 0.5});
  Polynomial q({-3.0, 4.0});
  Polynomial pq = p * q;
  for (double x : {-1.7, 0.0, 0.9, 2.4}) {
    CHECK(pq(x) == doctest::Approx(p(x) * q(x)).epsilon(1e-12));
  }
}

}  // TEST_SUITE
