#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "generators.hpp"
#include "poincare/sir.hpp"

using namespace poincare;

namespace {

const Poly2 S = Poly2::variable(0);
const Poly2 I = Poly2::variable(1);

}  // namespace

TEST_CASE("make_field") {
  const PlanarField f = sir::make_field({1, 3, 1, 1});
  CHECK(f.p() == Poly2::constant(1) - 3 * S * I - S);
  CHECK(f.q() == 3 * S * I - 2 * I);
  CHECK(f.degree() == 2);
  CHECK(sir::make_field({1, 2, 1, 1}).q() == 2 * S * I - 2 * I);
  CHECK_THROWS_AS(sir::make_field({1, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(sir::make_field({1, 1, -1, 1}), std::invalid_argument);
}

TEST_CASE("analyze examples") {
  auto a = sir::analyze({1, 3, 1, 1});
  CHECK(a.r0 == Rational(3, 2));
  CHECK(a.regime == sir::Regime::Supercritical);
  CHECK(a.e0 == RatVec2{1, 0});
  REQUIRE(a.e_star.has_value());
  CHECK(*a.e_star == RatVec2{Rational(2, 3), Rational(1, 6)});
  CHECK_FALSE(a.predicted_rate.has_value());

  a = sir::analyze({1, 2, 1, 1});
  CHECK(a.r0 == 1);
  CHECK(a.regime == sir::Regime::Critical);
  CHECK_FALSE(a.e_star.has_value());
  CHECK(*a.predicted_slope == 4);

  a = sir::analyze({1, 1, 1, 1});
  CHECK(a.r0 == Rational(1, 2));
  CHECK(a.regime == sir::Regime::Subcritical);
  CHECK(*a.predicted_rate == -1);
  CHECK(sir::to_string(a.regime) == "subcritical");
}

TEST_CASE("random parameter identities") {
  std::mt19937_64 g(61);
  for (int trial = 0; trial < 50; ++trial) {
    const sir::Params p = trial % 5 == 0 ? gen::critical_params(g) : gen::sir_params(g);
    const auto a = sir::analyze(p);
    const PlanarField f = sir::make_field(p);
    CHECK(a.r0 == p.A * p.beta / (p.mu * (p.q + p.mu)));
    CHECK((a.r0 > 1) == a.e_star.has_value());
    CHECK(f.eval(a.e0) == RatVec2{0, 0});
    const RatMat2 j0 = jacobian(f, a.e0);
    CHECK(j0[0][0] == -p.mu);
    CHECK(j0[0][1] == -p.A * p.beta / p.mu);
    CHECK(j0[1][0] == 0);
    CHECK(j0[1][1] == (p.A * p.beta - p.mu * (p.q + p.mu)) / p.mu);
    if (a.e_star) {
      CHECK(f.eval(*a.e_star) == RatVec2{0, 0});
      const RatMat2 js = jacobian(f, *a.e_star);
      CHECK(js[0][0] == -p.A * p.beta / (p.q + p.mu));
      CHECK(js[0][1] == -(p.q + p.mu));
      CHECK(js[1][0] == p.mu * (a.r0 - 1));
      CHECK(js[1][1] == 0);
    }
  }
}

TEST_CASE("Lyapunov functions") {
  const LyapunovFunction ve = sir::lyapunov({1, 3, 1, 1});
  CHECK(ve.kind == LyapunovKind::Endemic);
  CHECK(std::abs(ve(Vec2{2.0 / 3, 1.0 / 6})) < 1e-15);
  CHECK(ve(Vec2{1.0, 1.0}) > 0);

  const LyapunovFunction vd = sir::lyapunov({1, 1, 1, 1});
  CHECK(vd.kind == LyapunovKind::DiseaseFree);
  CHECK(vd(Vec2{1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(vd(Vec2{1.0, 0.25}) == doctest::Approx(0.25));
  CHECK(vd(Vec2{1.0, 0.0}) == 0.0);
  CHECK(vd.in_domain(Vec2{1.0, 0.0}));
  CHECK_FALSE(vd.in_domain(Vec2{0.0, 1.0}));
  CHECK_THROWS_AS(sir::lyapunov({1, 1, 1, 1}, LyapunovKind::Endemic), std::domain_error);
  CHECK(sir::lyapunov({1, 2, 1, 1}).kind == LyapunovKind::DiseaseFree);
}

TEST_CASE("reconstruct_r") {
  const sir::Params p{1, 3, 1, 1};
  SUBCASE("I = 0 decays") {
    Trajectory t;
    for (int k = 0; k <= 50; ++k) t.samples.push_back({0.1 * k, 0.1 * k, {1.0, 0.0}, ChartId::PLANE});
    for (const auto& [time, r] : sir::reconstruct_r(t, p, 1.0))
      CHECK(r == doctest::Approx(std::exp(-time)).epsilon(1e-14));
  }
  SUBCASE("equilibrium value is preserved") {
    Trajectory t;
    const double istar = 1.0 / 6;
    for (int k = 0; k <= 50; ++k) t.samples.push_back({0.3 * k, 0.3 * k, {2.0 / 3, istar}, ChartId::PLANE});
    for (const auto& [time, r] : sir::reconstruct_r(t, p, istar))
      CHECK(r == doctest::Approx(istar).epsilon(1e-14));
  }
  SUBCASE("supercritical run approaches q I* / mu") {
    IntegrateOptions o;
    o.stop_on_convergence = false;
    const Trajectory t = integrate(sir::make_field(p), {3, 0.5}, 60, o);
    const auto r = sir::reconstruct_r(t, p, 0.0);
    CHECK(std::abs(r.back().second - 1.0 / 6) < 1e-4);
  }
  CHECK_THROWS_AS(sir::reconstruct_r(Trajectory{}, p, -1.0), std::invalid_argument);
}

TEST_CASE("parameter files") {
  auto pp = sir::parse_params("A = 1\n# comment\nbeta=3/2  # trailing\nmu=0.5\n");
  CHECK(*pp.A == 1);
  CHECK(*pp.beta == Rational(3, 2));
  CHECK(*pp.mu == Rational(1, 2));
  CHECK_FALSE(pp.q.has_value());
  CHECK_FALSE(pp.complete());
  CHECK_THROWS_AS(pp.require(), std::invalid_argument);

  pp = sir::parse_params(R"({"A": "1", "beta": 2, "mu": "1", "q": 0.25})");
  CHECK(pp.complete());
  CHECK(*pp.q == Rational(1, 4));

  sir::PartialParams flags;
  flags.A = Rational(5);
  flags.merge_missing(pp);
  CHECK(*flags.A == 5);
  CHECK(*flags.beta == 2);

  CHECK_THROWS_AS(sir::parse_params("gamma=1"), std::invalid_argument);
  CHECK_THROWS_AS(sir::parse_params("A 1"), std::invalid_argument);
  CHECK_THROWS_AS(sir::parse_params("{\"A\": "), std::invalid_argument);
  CHECK_THROWS_AS(sir::parse_params("{\"A\": [1]}"), std::invalid_argument);
}
