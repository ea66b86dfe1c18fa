#include "poincare/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace poincare {

CompiledField::CompiledField(const PlanarField& f) {
  for (const auto& [e, c] : f.p().terms()) p_.push_back({e.first, e.second, c.get_d()});
  for (const auto& [e, c] : f.q().terms()) q_.push_back({e.first, e.second, c.get_d()});
}

double CompiledField::eval(const std::vector<Term>& terms, const Vec2& y) {
  double acc = 0.0;
  for (const auto& t : terms) {
    double m = t.c;
    for (int k = 0; k < t.i; ++k) m *= y[0];
    for (int k = 0; k < t.j; ++k) m *= y[1];
    acc += m;
  }
  return acc;
}

Vec2 CompiledField::operator()(const Vec2& y) const { return {eval(p_, y), eval(q_, y)}; }

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

Vec2 axpy(const Vec2& y, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
  Vec2 out = y;
  for (const auto& [w, k] : terms) {
    out[0] += h * w * (*k)[0];
    out[1] += h * w * (*k)[1];
  }
  return out;
}

}  // namespace

Vec2 dopri_step(const Rhs& f, const Vec2& y, double h, Vec2* error) {
  const Vec2 k1 = f(y);
  const Vec2 k2 = f(axpy(y, h, {{a21, &k1}}));
  const Vec2 k3 = f(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
  const Vec2 k4 = f(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const Vec2 k5 = f(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const Vec2 k6 = f(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
  const Vec2 y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  if (error) {
    const Vec2 k7 = f(y5);
    *error = axpy(Vec2{0.0, 0.0}, h,
                  {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});
  }
  return y5;
}

Vec2 dopri_fixed(const Rhs& f, Vec2 y, double h, int n) {
  for (int k = 0; k < n; ++k) y = dopri_step(f, y, h);
  return y;
}

std::string_view to_string(TerminalKind k) {
  switch (k) {
    case TerminalKind::ConvergedTo: return "converged-to";
    case TerminalKind::LeftRegion: return "left-region";
    case TerminalKind::TimeExhausted: return "time-exhausted";
    case TerminalKind::StepUnderflow: return "step-underflow";
  }
  return "?";
}

bool Trajectory::time_is_approximate() const {
  return std::any_of(samples.begin(), samples.end(),
                     [](const TrajectorySample& s) { return s.chart != ChartId::PLANE; });
}

Vec2 Trajectory::plane_point(std::size_t k) const {
  const auto& s = samples.at(k);
  return chart_to_plane(s.point, s.chart);
}

DiskPoint Trajectory::disk_point(std::size_t k) const {
  const auto& s = samples.at(k);
  return chart_to_disk(s.point, s.chart);
}

namespace {

struct Tolerances {
  double rel;
  double abs;
};

struct StepResult {
  bool ok;
  Vec2 y;
  double h_used;
  double h_next;
};

// Retries with shrinking steps until the mixed error norm is below one.
StepResult adaptive_step(const Rhs& f, const Vec2& y, double h, const Tolerances& tol,
                         double min_step, double max_step) {
  h = std::min(h, max_step);
  for (;;) {
    if (h < min_step) return {false, y, h, h};
    Vec2 err;
    const Vec2 y5 = dopri_step(f, y, h, &err);
    double norm = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double scale = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(y5[i]));
      norm = std::max(norm, std::abs(err[i]) / scale);
    }
    if (!std::isfinite(norm)) {
      h *= 0.2;
      continue;
    }
    if (norm <= 1.0) {
      const double grow = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      return {true, y5, h, std::min(h * grow, max_step)};
    }
    h *= std::max(0.2, 0.9 * std::pow(norm, -0.2));
  }
}

Tolerances tolerances(const IntegrateOptions& o) {
  if (!(o.tol > 0)) throw std::invalid_argument("integration tolerance must be positive");
  const double abs_tol = o.abs_tol.value_or(o.tol);
  if (!(abs_tol >= 0)) throw std::invalid_argument("absolute tolerance must be nonnegative");
  return {o.tol, abs_tol};
}

// Steps are kept inside the linear stability region of the local Jacobian, so
// the discrete map contracts near a sink instead of hovering at tolerance level.
class StepCap {
 public:
  explicit StepCap(const PlanarField& f)
      : row0_(PlanarField(diff(f.p(), 0), diff(f.p(), 1))),
        row1_(PlanarField(diff(f.q(), 0), diff(f.q(), 1))) {}

  double operator()(const Vec2& y, double max_step) const {
    const Vec2 r0 = row0_(y), r1 = row1_(y);
    const double half_tr = 0.5 * (r0[0] + r1[1]);
    const double det = r0[0] * r1[1] - r0[1] * r1[0];
    const double disc = half_tr * half_tr - det;
    const double rho = disc >= 0 ? std::abs(half_tr) + std::sqrt(disc) : std::sqrt(det);
    if (!(rho > 0) || !std::isfinite(rho)) return max_step;
    return std::min(max_step, kFraction / rho);
  }

 private:
  static constexpr double kFraction = 1.5;
  CompiledField row0_, row1_;
};

constexpr double kConvergedField = 1e-10;
constexpr double kConvergedDisplacement = 1e-12;
constexpr int kConvergedSteps = 10;

}  // namespace

Trajectory integrate(const PlanarField& f, const Vec2& from, double t_max,
                     const IntegrateOptions& options) {
  const Tolerances tol = tolerances(options);
  const CompiledField field(f);
  const StepCap cap(f);
  const Rhs rhs = [&field](const Vec2& y) { return field(y); };

  Trajectory traj;
  double t = 0.0;
  Vec2 y = from;
  double h = options.initial_step;
  traj.samples.push_back({t, t, y, ChartId::PLANE});
  int quiet = 0;
  std::size_t steps = 0;

  while (t < t_max) {
    if (++steps > options.max_steps) break;
    const auto step = adaptive_step(rhs, y, std::min(h, t_max - t), tol, options.min_step,
                                    cap(y, options.max_step));
    if (!step.ok) {
      traj.terminal = {TerminalKind::StepUnderflow, y};
      return traj;
    }
    t += step.h_used;
    const double displacement = std::hypot(step.y[0] - y[0], step.y[1] - y[1]);
    y = step.y;
    h = step.h_next;
    traj.samples.push_back({t, t, y, ChartId::PLANE});
    if (!options.region.contains(y)) {
      traj.terminal = {TerminalKind::LeftRegion, y};
      return traj;
    }
    if (options.stop_on_convergence) {
      const Vec2 v = field(y);
      quiet = (std::hypot(v[0], v[1]) < kConvergedField && displacement < kConvergedDisplacement)
                  ? quiet + 1
                  : 0;
      if (quiet >= kConvergedSteps) {
        traj.terminal = {TerminalKind::ConvergedTo, y};
        return traj;
      }
    }
  }
  traj.terminal = {TerminalKind::TimeExhausted, y};
  return traj;
}

Trajectory integrate_chart(const ChartField& cf, const Vec2& from, double tau_max,
                           const IntegrateOptions& options) {
  IntegrateOptions o = options;
  o.region = Region{-1e-300, std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  o.stop_on_convergence = false;
  Trajectory traj = integrate(cf.as_field(), from, tau_max, o);
  for (auto& s : traj.samples) s.chart = cf.chart;
  return traj;
}

Trajectory trace_on_disk(const PlanarField& f, const Vec2& from, double t_max,
                         const DiskTraceOptions& options) {
  const IntegrateOptions& io = options.integrate;
  const Tolerances tol = tolerances(io);
  const CompiledField plane_field(f);
  const ChartField u1 = to_chart(f, ChartId::U1);
  const ChartField u2 = to_chart(f, ChartId::U2);
  const CompiledField u1_field(u1.as_field());
  const CompiledField u2_field(u2.as_field());
  const StepCap plane_cap(f), u1_cap(u1.as_field()), u2_cap(u2.as_field());
  const int power = u1.rescale_power;

  Trajectory traj;
  ChartId chart = ChartId::PLANE;
  Vec2 y = from;
  auto radius = [](const Vec2& si) { return std::hypot(si[0], si[1]); };
  auto enter_chart = [&](const Vec2& si) {
    chart = si[0] >= si[1] ? ChartId::U1 : ChartId::U2;
    y = plane_to_chart(si, chart);
  };
  if (radius(from) >= options.switch_out) enter_chart(from);

  double t = 0.0, tau = 0.0;
  double h = io.initial_step;
  int quiet = 0;
  std::size_t steps = 0;
  traj.samples.push_back({t, tau, y, chart});

  while (t < t_max) {
    if (++steps > io.max_steps || tau > options.tau_max) break;
    if (chart == ChartId::PLANE) {
      const Rhs rhs = [&](const Vec2& v) { return plane_field(v); };
      const auto step = adaptive_step(rhs, y, std::min(h, t_max - t), tol, io.min_step,
                                      plane_cap(y, io.max_step));
      if (!step.ok) {
        traj.terminal = {TerminalKind::StepUnderflow, y};
        return traj;
      }
      const double displacement = std::hypot(step.y[0] - y[0], step.y[1] - y[1]);
      t += step.h_used;
      tau += step.h_used;
      y = step.y;
      h = step.h_next;
      traj.samples.push_back({t, tau, y, chart});
      if (!io.region.contains(y)) {
        traj.terminal = {TerminalKind::LeftRegion, y};
        return traj;
      }
      if (radius(y) >= options.switch_out) {
        enter_chart(y);
        traj.samples.push_back({t, tau, y, chart});
        h = io.initial_step;
        quiet = 0;
        continue;
      }
      if (io.stop_on_convergence) {
        const Vec2 v = plane_field(y);
        quiet = (std::hypot(v[0], v[1]) < kConvergedField && displacement < kConvergedDisplacement)
                    ? quiet + 1
                    : 0;
        if (quiet >= kConvergedSteps) {
          traj.terminal = {TerminalKind::ConvergedTo, y};
          return traj;
        }
      }
    } else {
      const CompiledField& cf = chart == ChartId::U1 ? u1_field : u2_field;
      const Rhs rhs = [&](const Vec2& v) { return cf(v); };
      const StepCap& sc = chart == ChartId::U1 ? u1_cap : u2_cap;
      const auto step = adaptive_step(rhs, y, h, tol, io.min_step, sc(y, io.max_step));
      if (!step.ok) {
        traj.terminal = {TerminalKind::StepUnderflow, chart_to_plane(y, chart)};
        return traj;
      }
      // dt = lambda^(d-1) dtau, trapezoidal estimate.
      const double w0 = std::pow(std::max(y[0], 0.0), power);
      const double w1 = std::pow(std::max(step.y[0], 0.0), power);
      t += 0.5 * (w0 + w1) * step.h_used;
      tau += step.h_used;
      y = step.y;
      h = step.h_next;
      if (y[0] < options.lambda_floor) {
        traj.samples.push_back({t, tau, {std::max(y[0], 0.0), y[1]}, chart});
        traj.terminal = {TerminalKind::LeftRegion, chart_to_plane({options.lambda_floor, y[1]}, chart)};
        return traj;
      }
      traj.samples.push_back({t, tau, y, chart});
      const Vec2 si = chart_to_plane(y, chart);
      if (radius(si) < options.switch_in) {
        chart = ChartId::PLANE;
        y = si;
        traj.samples.push_back({t, tau, y, chart});
        h = io.initial_step;
      } else if (y[1] > 2.0) {
        // The other chart covers this direction better: swap U1 <-> U2.
        chart = chart == ChartId::U1 ? ChartId::U2 : ChartId::U1;
        y = {y[0] / y[1], 1.0 / y[1]};
        traj.samples.push_back({t, tau, y, chart});
      }
    }
  }
  traj.terminal = {TerminalKind::TimeExhausted, chart_to_plane(y, chart)};
  return traj;
}

std::string_view to_string(LyapunovKind k) {
  return k == LyapunovKind::Endemic ? "endemic-V" : "disease-free-V";
}

bool LyapunovFunction::in_domain(const Vec2& si) const {
  if (!(si[0] > 0)) return false;
  return kind == LyapunovKind::DiseaseFree || si[1] > 0;
}

double LyapunovFunction::operator()(const Vec2& si) const {
  if (!in_domain(si))
    throw std::domain_error(std::string(to_string(kind)) + " evaluated outside its domain");
  const double s_part = si[0] - s_ref - s_ref * std::log(si[0] / s_ref);
  if (kind == LyapunovKind::DiseaseFree) return s_part + si[1];
  return s_part + si[1] - i_ref - i_ref * std::log(si[1] / i_ref);
}

LyapunovReport lyapunov_check(const Trajectory& traj, const LyapunovFunction& v) {
  if (traj.samples.empty()) throw std::invalid_argument("lyapunov_check: empty trajectory");
  LyapunovReport r{v.kind, 0.0, 0.0, 0.0, true};
  double prev = v(traj.plane_point(0));
  r.tolerance = 1e-8 * (1.0 + std::abs(prev));
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const double cur = v(traj.plane_point(k));
    r.max_increase = std::max(r.max_increase, cur - prev);
    prev = cur;
  }
  r.final_value = prev;
  r.monotone = r.max_increase <= r.tolerance;
  return r;
}

std::string_view to_string(DecayModel m) {
  return m == DecayModel::Exponential ? "exponential" : "algebraic-reciprocal";
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> value, DecayModel model) {
  if (t.size() != value.size()) throw std::invalid_argument("fit_decay: size mismatch");
  if (t.empty()) throw std::invalid_argument("fit_decay: fewer than 10 samples in the fit window");
  const double t0 = t.front(), t1 = t.back();
  const double cut = t0 + 0.5 * (t1 - t0);
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < cut) continue;
    if (!(value[k] > 0))
      throw std::domain_error("fit_decay: component is not positive on the fit window");
    xs.push_back(t[k]);
    ys.push_back(model == DecayModel::Exponential ? std::log(value[k]) : 1.0 / value[k]);
  }
  if (xs.size() < 10) throw std::invalid_argument("fit_decay: fewer than 10 samples in the fit window");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_decay: degenerate time window");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - (intercept + slope * xs[k]);
    ss_res += r * r;
  }
  const double r2 = syy == 0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return {model, slope, intercept, r2, xs.front(), xs.back()};
}

DecayFit fit_decay(const Trajectory& traj, int component, DecayModel model) {
  if (component != 0 && component != 1) throw std::invalid_argument("component must be 0 (S) or 1 (I)");
  std::vector<double> t, v;
  for (const auto& s : traj.samples) {
    if (s.chart != ChartId::PLANE) continue;
    t.push_back(s.t);
    v.push_back(s.point[static_cast<std::size_t>(component)]);
  }
  return fit_decay(t, v, model);
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,S,I,chart,u,v\n";
  char line[256];
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const auto& s = traj.samples[k];
    const Vec2 si = traj.plane_point(k);
    const DiskPoint d = traj.disk_point(k);
    std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%s,%.10g,%.10g\n", s.t, si[0], si[1],
                  std::string(to_string(s.chart)).c_str(), d.u, d.v);
    out << line;
  }
}

}  // namespace poincare
