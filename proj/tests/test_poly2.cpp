#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "poincare/poly2.hpp"

using namespace poincare;

namespace {

const Poly2 S = Poly2::variable(0);
const Poly2 I = Poly2::variable(1);
Poly2 c(const Rational& v) { return Poly2::constant(v); }

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("1.5e2") == 150);
  CHECK(parse_rational("010/3") == Rational(10, 3));
  CHECK(parse_rational("0.0625") == Rational(1, 16));
  CHECK(parse_rational("2e-3") == Rational(1, 500));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("add") {
  CHECK((S + I) + (S - I) == 2 * S);
  const Poly2 p = 3 * S * I - S + c(1);
  CHECK(p + Poly2() == p);
  const Rational beta(3), mu(2);
  CHECK(beta * S * I + (-beta * S * I - mu * S) == -mu * S);
  CHECK((S - S).is_zero());
  CHECK((S - S).terms().empty());
}

TEST_CASE("mul") {
  CHECK(S * I == Poly2::monomial(1, 1, 1));
  CHECK((S + c(1)) * (S - c(1)) == S * S - c(1));
  CHECK(pow(S + I, 2) == S * S + 2 * S * I + I * I);
  CHECK(pow(S, 0) == c(1));
}

TEST_CASE("diff") {
  const Rational A(1), beta(3), mu(1), q(1);
  const Poly2 P = c(A) - beta * S * I - mu * S;
  const Poly2 Q = beta * S * I - q * I - mu * I;
  CHECK(diff(P, 0) == -beta * I - c(mu));
  CHECK(diff(Q, 1) == beta * S - c(q + mu));
  CHECK(diff(I * I, 0).is_zero());
  CHECK_THROWS_AS(diff(S, 2), std::invalid_argument);
}

TEST_CASE("eval") {
  CHECK((S * S + I).eval(Rational(2), Rational(3)) == 7);
  const Poly2 P = c(1) - 3 * S * I - S;
  CHECK(P.eval(Rational(1), Rational(0)) == 0);
  CHECK(Poly2().eval(Rational(5), Rational(-2)) == 0);
  CHECK((S * S + I).eval(2.0, 3.0) == doctest::Approx(7.0));
}

TEST_CASE("degree and display") {
  CHECK(Poly2().degree() == -1);
  CHECK(c(4).degree() == 0);
  CHECK((3 * S * I - S + c(1)).degree() == 2);
  CHECK((3 * S * I - S + c(1)).to_string() == "3*S*I - S + 1");
  CHECK((-S * S * I + Rational(1, 2) * I).to_string() == "-S^2*I + 1/2*I");
  CHECK(Poly2().to_string() == "0");
}

TEST_CASE("compactify_numerator examples") {
  const Rational beta(3), mu(1), q(1), A(2);
  const Poly2 Q = beta * S * I - q * I - mu * I;
  const Poly2 lam = Poly2::variable(0, kChartNames), x = Poly2::variable(1, kChartNames);
  CHECK(compactify_numerator(Q, 2, ChartId::U2) == beta * x - (q + mu) * lam);
  CHECK(compactify_numerator(c(A), 2, ChartId::U2) == A * lam * lam);
  CHECK(compactify_numerator(c(A), 2, ChartId::U1) == A * lam * lam);
  CHECK(compactify_numerator(S, 1, ChartId::U2) == x);
  CHECK(compactify_numerator(S, 1, ChartId::U1) == c(1));
  // lambda^2 (A - beta (x/lambda)(1/lambda) - mu x/lambda)
  const Poly2 P = c(A) - beta * S * I - mu * S;
  CHECK(compactify_numerator(P, 2, ChartId::U2) == A * lam * lam - beta * x - mu * lam * x);
  CHECK_THROWS_AS(compactify_numerator(S * S, 1, ChartId::U2), std::invalid_argument);
  CHECK_THROWS_AS(compactify_numerator(S, 1, ChartId::PLANE), std::invalid_argument);
}

TEST_CASE("parser") {
  ParamTable params{{"mu", Rational(2)}, {"beta", Rational(1, 3)}};
  CHECK(parse_poly("3/2*S^2*I - mu*S", kPlaneNames, params) ==
        Rational(3, 2) * S * S * I - 2 * S);
  CHECK(parse_poly("(S - 1)^2") == S * S - 2 * S + c(1));
  CHECK(parse_poly("-S*I/4 + 0.5") == Rational(-1, 4) * S * I + c(Rational(1, 2)));
  CHECK(parse_poly("beta*S*I", kPlaneNames, params) == Rational(1, 3) * S * I);
  CHECK(parse_poly("2*lambda*x", kChartNames).coeff(1, 1) == 2);
  CHECK_THROWS_AS(parse_poly("S/I"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("S/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("gamma*S"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("S +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("(S"), std::invalid_argument);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 a = gen::poly(g, 6), b = gen::poly(g, 6), d = gen::poly(g, 6);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK((a - a).is_zero());
    const Poly2 ab = a * b;
    for (const auto& [e, coef] : ab.terms()) CHECK(coef != 0);
  }
}

TEST_CASE("eval is a ring homomorphism at rational points") {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 a = gen::poly(g, 6), b = gen::poly(g, 6);
    const Rational s = gen::rational(g), i = gen::rational(g);
    CHECK((a * b).eval(s, i) == a.eval(s, i) * b.eval(s, i));
    CHECK((a + b).eval(s, i) == a.eval(s, i) + b.eval(s, i));
  }
}

TEST_CASE("diff is linear and satisfies the Leibniz rule") {
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 a = gen::poly(g, 6), b = gen::poly(g, 6);
    const Rational k = gen::rational(g);
    for (int var = 0; var < 2; ++var) {
      CHECK(diff(a + k * b, var) == diff(a, var) + k * diff(b, var));
      CHECK(diff(a * b, var) == diff(a, var) * b + a * diff(b, var));
    }
  }
}

TEST_CASE("compactify_numerator equals lambda^d p(point) at rational points") {
  std::mt19937_64 g(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 p = gen::poly(g, 5);
    const int d = std::max(p.degree(), 0) + static_cast<int>(g() % 2);
    const Rational lam = gen::positive(g), x = gen::rational(g);
    Rational lam_d = 1;
    for (int k = 0; k < d; ++k) lam_d *= lam;
    CHECK(compactify_numerator(p, d, ChartId::U2).eval(lam, x) == lam_d * p.eval(x / lam, 1 / lam));
    CHECK(compactify_numerator(p, d, ChartId::U1).eval(lam, x) == lam_d * p.eval(1 / lam, x / lam));
  }
}

TEST_CASE("compose substitutes polynomials") {
  const Poly2 p = S * S + I;
  CHECK(compose(p, S + I, S - I) == pow(S + I, 2) + S - I);
}
