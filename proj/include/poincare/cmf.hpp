#pragma once

// Center-manifold reduction at equilibria whose spectrum is {nonzero, 0},
// computed order by order in exact arithmetic.
//
// With T = (hyperbolic eigenvector, center eigenvector) and shifted
// coordinates (u, v) = T^-1 (point - equilibrium), the manifold is the graph
// u = h(v) = sum_{k>=2} h_k v^k and the flow on it is v' = sum_{k>=2} c_k v^k.
// The graph is the unique formal power series solving the invariance
// equation; every center manifold of the equilibrium shares this Taylor
// expansion even when the manifold itself is not unique.

#include <string>
#include <string_view>
#include <vector>

#include "poincare/compact.hpp"
#include "poincare/field.hpp"

namespace poincare {

/// Truncated univariate power series, index = power.
using Series = std::vector<Rational>;

enum class CmfVerdict { AttractingSide, RepellingSide, DegenerateToOrder };
enum class FlowDirection { TowardEquilibrium, AwayFromEquilibrium, Undetermined };

std::string_view to_string(CmfVerdict v);
std::string_view to_string(FlowDirection d);

struct CmfReduction {
  RatVec2 equilibrium;
  /// Columns: eigenvector of the nonzero eigenvalue, then of the zero one.
  RatMat2 eigenbasis;
  Rational hyperbolic_eigenvalue;
  int order = 0;

  /// The field in eigen coordinates (u, v).
  Poly2 u_dot;
  Poly2 v_dot;

  Series h;        // h[0] = h[1] = 0
  Series reduced;  // c[0] = c[1] = 0

  /// The same manifold in the original variables. `parameter_index` names the
  /// coordinate w (0 or 1) that parametrizes it; with w0 its equilibrium
  /// value and z the other coordinate:
  ///   z - z0 = sum_k graph[k] (w - w0)^k,  w' = sum_k reduced_original[k] (w - w0)^k.
  int parameter_index = 1;
  Series graph;
  Series reduced_original;

  /// Attracting/repelling for the side w > w0; RepellingSide whenever the
  /// hyperbolic eigenvalue is positive.
  CmfVerdict verdict = CmfVerdict::DegenerateToOrder;
  VarNames names = kPlaneNames;

  /// h_k, zero outside the stored range.
  Rational h_coeff(int k) const;
  Rational reduced_coeff(int k) const;
};

inline constexpr int kDefaultCmfOrder = 4;

/// Reduction at an exact equilibrium with eigenvalues {negative, 0}.
/// Throws std::domain_error if det J != 0 or trace J >= 0, and
/// std::invalid_argument if order is outside [2, 10] or `at` is not an
/// equilibrium.
CmfReduction reduce(const PlanarField& f, const RatVec2& at, int order = kDefaultCmfOrder);

/// Reduction at the chart equilibrium (0, x_at) on the line at infinity.
/// Both {-, 0} and {+, 0} spectra are accepted; the latter is reduced along
/// the center direction and marked RepellingSide.
CmfReduction reduce_chart_infinity(const ChartField& cf, int order = kDefaultCmfOrder,
                                   const Rational& x_at = 0);

/// Direction of the flow near the equilibrium on the side sign(side) of the
/// parameter coordinate (e.g. lambda > 0 or I > 0).
FlowDirection verdict_to_flow_direction(const CmfReduction& r, int side = +1);

/// Coefficients through the reduction order of the invariance equation
/// u'(h(v), v) - h'(v) v'(h(v), v); all zero for a correct reduction.
Series invariance_residual(const CmfReduction& r);

/// Series arithmetic helpers, truncated after power `order`.
Series series_mul(const Series& a, const Series& b, int order);
Series series_compose(const Poly2& p, const Series& a, const Series& b, int order);

/// Original-variable forms, e.g. "dI/dt = -4*I^2 + O(I^3)" for through = 2
/// and "S = 1 - 2*I + O(I^2)" for through = 1. through = 0 means r.order.
std::string reduced_dynamics_text(const CmfReduction& r, int through = 0);
std::string graph_text(const CmfReduction& r, int through = 0);

}  // namespace poincare
