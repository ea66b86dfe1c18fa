#pragma once

#include <random>

#include "poincare/poly2.hpp"
#include "poincare/sir.hpp"

namespace gen {

using poincare::Poly2;
using poincare::Rational;

/// n/d with |n| <= num_max, 1 <= d <= den_max.
inline Rational rational(std::mt19937_64& g, int num_max = 10, int den_max = 6) {
  std::uniform_int_distribution<int> n(-num_max, num_max), d(1, den_max);
  Rational r(n(g), d(g));
  r.canonicalize();
  return r;
}

inline Rational positive(std::mt19937_64& g, int num_max = 9, int den_max = 5) {
  std::uniform_int_distribution<int> n(1, num_max), d(1, den_max);
  Rational r(n(g), d(g));
  r.canonicalize();
  return r;
}

/// Coefficients in [-10, 10], total degree <= max_degree.
inline Poly2 poly(std::mt19937_64& g, int max_degree, const poincare::VarNames& names = poincare::kPlaneNames) {
  std::uniform_int_distribution<int> deg(0, max_degree), count(0, 6);
  Poly2 p(names);
  const int n = count(g);
  for (int k = 0; k < n; ++k) {
    const int total = deg(g);
    std::uniform_int_distribution<int> split(0, total);
    const int i = split(g);
    Rational c = rational(g, 10, 1) / Rational(std::uniform_int_distribution<int>(1, 4)(g));
    p += Poly2::monomial(c, i, total - i, names);
  }
  return p;
}

inline poincare::sir::Params sir_params(std::mt19937_64& g) {
  return {positive(g), positive(g), positive(g), positive(g)};
}

/// Draw with A beta = mu (q + mu), i.e. R0 = 1.
inline poincare::sir::Params critical_params(std::mt19937_64& g) {
  const Rational mu = positive(g), q = positive(g), beta = positive(g);
  const Rational A = mu * (q + mu) / beta;
  return {A, beta, mu, q};
}

}  // namespace gen
