#pragma once

// Exact rational scalars. GMP's mpq_class keeps values canonical (lowest
// terms, positive denominator, zero as 0/1) after every arithmetic operation.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace poincare {

using Rational = mpq_class;

/// Parses "7", "-3/4" or a decimal such as "0.125" / "2.5e-3" exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace poincare
