#pragma once

// Trajectories in plane and chart coordinates, Lyapunov monotonicity checks
// and asymptotic decay fits.

#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "poincare/compact.hpp"
#include "poincare/field.hpp"

namespace poincare {

/// Double-precision evaluator for a polynomial field.
class CompiledField {
 public:
  explicit CompiledField(const PlanarField& f);
  Vec2 operator()(const Vec2& y) const;

 private:
  struct Term {
    int i, j;
    double c;
  };
  static double eval(const std::vector<Term>& terms, const Vec2& y);
  std::vector<Term> p_, q_;
};

using Rhs = std::function<Vec2(const Vec2&)>;

/// One Dormand-Prince 5(4) step; returns the 5th-order solution and writes
/// the embedded error estimate.
Vec2 dopri_step(const Rhs& f, const Vec2& y, double h, Vec2* error = nullptr);

/// n fixed steps of size h.
Vec2 dopri_fixed(const Rhs& f, Vec2 y, double h, int n);

struct TrajectorySample {
  double t;    // original time (estimated on chart segments)
  double tau;  // cumulative integration time: t on the plane, rescaled on charts
  Vec2 point;  // (S, I) on PLANE, (lambda, x) on a chart
  ChartId chart;
};

enum class TerminalKind { ConvergedTo, LeftRegion, TimeExhausted, StepUnderflow };
std::string_view to_string(TerminalKind k);

struct Terminal {
  TerminalKind kind = TerminalKind::TimeExhausted;
  Vec2 point{};  // plane point for ConvergedTo
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Terminal terminal;

  /// Original time is exact only when no sample lies on a chart.
  bool time_is_approximate() const;
  Vec2 plane_point(std::size_t k) const;
  DiskPoint disk_point(std::size_t k) const;
  const TrajectorySample& back() const { return samples.back(); }
};

struct IntegrateOptions {
  double tol = 1e-9;
  /// Absolute part of the mixed error norm; defaults to tol.
  std::optional<double> abs_tol;
  Region region{-1.0, 1e8, -1.0, 1e8};
  bool stop_on_convergence = true;
  double initial_step = 1e-2;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-14;
  std::size_t max_steps = 5'000'000;
};

/// Adaptive explicit Runge-Kutta integration in the plane. Throws
/// std::invalid_argument for tol <= 0.
Trajectory integrate(const PlanarField& f, const Vec2& from, double t_max,
                     const IntegrateOptions& options = {});

struct DiskTraceOptions {
  IntegrateOptions integrate;
  /// Plane -> chart handoff radius and chart -> plane return radius.
  double switch_out = 10.0;
  double switch_in = 8.0;
  /// Chart points with lambda below this count as having reached infinity.
  double lambda_floor = 1e-10;
  double tau_max = 1e7;
};

/// Integrates in the plane inside radius switch_out and on the desingularized
/// chart fields beyond it (U1 when S >= I, otherwise U2).
Trajectory trace_on_disk(const PlanarField& f, const Vec2& from, double t_max,
                         const DiskTraceOptions& options = {});

/// Integrates a chart field directly in rescaled time from (lambda, x).
Trajectory integrate_chart(const ChartField& cf, const Vec2& from, double tau_max,
                           const IntegrateOptions& options = {});

enum class LyapunovKind { Endemic, DiseaseFree };
std::string_view to_string(LyapunovKind k);

/// Endemic:      V = S - S* - S* log(S/S*) + I - I* - I* log(I/I*), on S, I > 0.
/// Disease-free: V = S - S0 - S0 log(S/S0) + I, on S > 0.
struct LyapunovFunction {
  LyapunovKind kind;
  double s_ref;
  double i_ref;  // unused for DiseaseFree

  bool in_domain(const Vec2& si) const;
  /// Throws std::domain_error outside the domain.
  double operator()(const Vec2& si) const;
};

struct LyapunovReport {
  LyapunovKind kind;
  double max_increase;
  double final_value;
  double tolerance;
  bool monotone;
};

LyapunovReport lyapunov_check(const Trajectory& traj, const LyapunovFunction& v);

enum class DecayModel { Exponential, AlgebraicReciprocal };
std::string_view to_string(DecayModel m);

struct DecayFit {
  DecayModel model;
  double rate_or_slope;
  double intercept;
  double r_squared;
  double t_start;
  double t_end;
};

/// Least-squares fit on the last half (by time) of the plane samples:
/// log(value) against t, or 1/value against t. component 0 = S, 1 = I.
DecayFit fit_decay(const Trajectory& traj, int component, DecayModel model);
DecayFit fit_decay(std::span<const double> t, std::span<const double> value, DecayModel model);

/// CSV with header t,S,I,chart,u,v.
void write_csv(std::ostream& out, const Trajectory& traj);

}  // namespace poincare
