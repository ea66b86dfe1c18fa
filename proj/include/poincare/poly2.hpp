#pragma once

// Sparse bivariate polynomials with exact rational coefficients.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "poincare/rational.hpp"

namespace poincare {

/// Local charts of the Poincare sphere covered by this library. PLANE is the
/// original (S, I) coordinate chart.
enum class ChartId { PLANE, U1, U2 };

std::string_view to_string(ChartId chart);
ChartId parse_chart(std::string_view text);

using VarNames = std::array<std::string, 2>;

inline const VarNames kPlaneNames{"S", "I"};
inline const VarNames kChartNames{"lambda", "x"};

class Poly2 {
 public:
  /// Exponent pair (i, j) of the monomial a^i b^j.
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, Rational>;

  Poly2() : names_(kPlaneNames) {}
  explicit Poly2(VarNames names) : names_(std::move(names)) {}
  Poly2(Terms terms, VarNames names);

  static Poly2 constant(const Rational& c, VarNames names = kPlaneNames);
  static Poly2 variable(int index, VarNames names = kPlaneNames);
  static Poly2 monomial(const Rational& c, int i, int j, VarNames names = kPlaneNames);

  const Terms& terms() const { return terms_; }
  const VarNames& names() const { return names_; }
  Poly2 with_names(VarNames names) const;

  Rational coeff(int i, int j) const;
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial (check is_zero() first).
  int degree() const;
  /// Sum of |coefficients|, as a double.
  double l1_norm() const;

  Poly2& operator+=(const Poly2& other);
  Poly2& operator-=(const Poly2& other);
  Poly2& operator*=(const Rational& c);

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(Poly2 a, const Rational& c) { return a *= c; }
  friend Poly2 operator*(const Rational& c, Poly2 a) { return a *= c; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  Poly2 operator-() const;

  /// Equality of term maps; variable names are display-only.
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  Rational eval(const Rational& a, const Rational& b) const;
  double eval(double a, double b) const;

  /// Graded display order, highest degree first, e.g. "-3*S*I - S + 1".
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const Rational& c);

  Terms terms_;
  VarNames names_;
};

Poly2 add(const Poly2& a, const Poly2& b);
Poly2 mul(const Poly2& a, const Poly2& b);
Poly2 pow(const Poly2& p, unsigned n);

/// Formal partial derivative with respect to variable 0 or 1.
Poly2 diff(const Poly2& p, int var);

/// p(a(u, v), b(u, v)); the result carries the names of `a`.
Poly2 compose(const Poly2& p, const Poly2& a, const Poly2& b);

/// lambda^d * p evaluated at the chart substitution, as a polynomial in
/// (lambda, x). U2 uses S = x/lambda, I = 1/lambda; U1 uses S = 1/lambda,
/// I = x/lambda. Throws std::invalid_argument if d < deg(p) or the chart is
/// PLANE.
Poly2 compactify_numerator(const Poly2& p, int d, ChartId chart);

using ParamTable = std::map<std::string, Rational, std::less<>>;

/// Parses expressions like "3/2*S^2*I - mu*S + (S - 1)^2". Identifiers are
/// either one of `names` or a key of `params`. Decimal literals are exact.
/// Throws std::invalid_argument with the offending position on error.
Poly2 parse_poly(std::string_view text, const VarNames& names = kPlaneNames,
                 const ParamTable& params = {});

}  // namespace poincare
