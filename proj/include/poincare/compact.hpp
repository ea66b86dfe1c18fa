#pragma once

// Poincare compactification of planar polynomial fields onto the charts U1
// (S direction at infinity) and U2 (I direction at infinity) of the upper
// hemisphere, plus projections onto the Poincare disk.

#include <span>
#include <vector>

#include "poincare/field.hpp"
#include "poincare/poly2.hpp"

namespace poincare {

/// Desingularized field on a chart, in variables (lambda, x).
///   U2: S = x / lambda, I = 1 / lambda
///   U1: S = 1 / lambda, I = x / lambda
/// Time is rescaled by d(tau)/dt = lambda^-(rescale_power).
struct ChartField {
  ChartId chart;
  Poly2 lam_dot;
  Poly2 x_dot;
  int rescale_power;
  int source_degree;

  /// The same field viewed as a planar field in (lambda, x).
  PlanarField as_field() const { return PlanarField(lam_dot, x_dot); }
};

/// Throws std::invalid_argument for the zero field or the PLANE chart.
ChartField to_chart(const PlanarField& f, ChartId chart);

/// x_dot(0, x) vanishes identically: every point of the line at infinity in
/// this chart is an equilibrium, and infinity_equilibria returns nothing.
bool infinity_is_degenerate(const ChartField& cf);

/// Equilibria on the invariant line {lambda = 0} with x >= 0. Jacobian and
/// type come from the chart field. A root at x = 0 is reported exactly.
std::vector<Equilibrium> infinity_equilibria(const ChartField& cf);

/// Real roots x >= -1e-12 of sum_k coeffs[k] x^k, ascending, from the
/// eigenvalues of the companion matrix (Newton-polished).
std::vector<double> nonnegative_real_roots(std::span<const double> coeffs);

struct DiskPoint {
  double u = 0.0;
  double v = 0.0;
  double radius2() const { return u * u + v * v; }
};

DiskPoint plane_to_disk(double s, double i);
/// `at` is (lambda, x) with lambda >= 0; lambda = 0 lands on the unit circle.
DiskPoint chart_to_disk(const Vec2& at, ChartId chart);

/// (S, I) -> (lambda, x). Requires I > 0 for U2 and S > 0 for U1.
Vec2 plane_to_chart(const Vec2& si, ChartId chart);
RatVec2 plane_to_chart(const RatVec2& si, ChartId chart);
/// (lambda, x) -> (S, I). Requires lambda > 0.
Vec2 chart_to_plane(const Vec2& at, ChartId chart);

/// Jacobian of (S, I) -> (lambda, x) at a plane point, exact.
RatMat2 chart_change_jacobian(const RatVec2& si, ChartId chart);

}  // namespace poincare
