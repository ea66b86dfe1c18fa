#pragma once

// Planar polynomial vector fields, equilibria and their linear type.

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "poincare/poly2.hpp"

namespace poincare {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using RatVec2 = std::array<Rational, 2>;
using RatMat2 = std::array<std::array<Rational, 2>, 2>;

/// dS/dt = p(S, I), dI/dt = q(S, I).
class PlanarField {
 public:
  PlanarField(Poly2 p, Poly2 q);

  const Poly2& p() const { return p_; }
  const Poly2& q() const { return q_; }
  /// max(deg p, deg q); -1 for the zero field.
  int degree() const { return degree_; }
  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
  const VarNames& names() const { return p_.names(); }

  RatVec2 eval(const RatVec2& at) const { return {p_.eval(at[0], at[1]), q_.eval(at[0], at[1])}; }
  Vec2 eval(const Vec2& at) const { return {p_.eval(at[0], at[1]), q_.eval(at[0], at[1])}; }

  /// Sum of |coefficients| over both components.
  double coefficient_norm() const { return p_.l1_norm() + q_.l1_norm(); }

  /// The four partial derivatives, ordered [[dp/da, dp/db], [dq/da, dq/db]].
  const std::array<std::array<Poly2, 2>, 2>& jacobian_polys() const { return jac_; }

 private:
  Poly2 p_;
  Poly2 q_;
  int degree_;
  std::array<std::array<Poly2, 2>, 2> jac_;
};

RatMat2 jacobian(const PlanarField& f, const RatVec2& at);
Mat2 jacobian(const PlanarField& f, const Vec2& at);
Mat2 to_double(const RatMat2& m);

struct EigenPair {
  std::complex<double> value;
  /// Unit Euclidean norm, first nonzero component real and positive.
  std::array<std::complex<double>, 2> vector;
};

struct EigenDecomposition {
  /// Sorted by (real part, imaginary part) ascending.
  std::array<EigenPair, 2> pairs;
  /// Repeated eigenvalue with a one-dimensional eigenspace. The second pair
  /// then holds a generalized vector w with (J - lambda) w = v.
  bool defective = false;
};

EigenDecomposition eigen(const Mat2& j);

enum class Classification {
  Sink,
  Source,
  Saddle,
  CenterLinear,
  NonhyperbolicSemisimpleZero,
  NonhyperbolicOther,
};

std::string_view to_string(Classification c);

struct ClassifyResult {
  Classification type;
  /// Some real part lies within a thousand tolerances of zero: the verdict
  /// sits next to a bifurcation boundary and should not be trusted blindly.
  bool near_threshold = false;
};

/// Tolerance used to decide whether a real part counts as zero.
double hyperbolicity_tolerance(const std::array<std::complex<double>, 2>& values);

ClassifyResult classify(const std::array<std::complex<double>, 2>& values);

struct Equilibrium {
  Vec2 location;
  std::optional<RatVec2> exact_location;
  Mat2 jacobian;
  EigenDecomposition eigen;
  Classification classification;
  bool hyperbolic;
  bool near_threshold;
  double residual;  // |field(location)|
};

/// Builds an Equilibrium record at a known point (exact Jacobian when the
/// point is exact).
Equilibrium make_equilibrium(const PlanarField& f, const Vec2& at);
Equilibrium make_equilibrium(const PlanarField& f, const RatVec2& at);

struct Region {
  double s_min, s_max, i_min, i_max;
  bool contains(const Vec2& p, double slack = 0.0) const {
    return p[0] >= s_min - slack && p[0] <= s_max + slack && p[1] >= i_min - slack &&
           p[1] <= i_max + slack;
  }
};

struct EquilibriumSearch {
  int grid = 30;
  int max_iterations = 50;
  double dedup_radius = 1e-7;
};

/// Residual bound every reported equilibrium satisfies.
double equilibrium_tolerance(const PlanarField& f);

/// Damped Newton from a grid of seeds over `region` plus any `candidates`.
/// Seeds that fail to converge are dropped. Results are sorted by (S, I).
std::vector<Equilibrium> find_equilibria(const PlanarField& f, const Region& region,
                                         const EquilibriumSearch& search = {},
                                         std::span<const RatVec2> candidates = {});

}  // namespace poincare
