// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "poincare/report.hpp"

using namespace poincare;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void verdict(const std::string& id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s criterion %s: %s (%s)\n", ok ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const Poly2 L = Poly2::variable(0, kChartNames);
const Poly2 X = Poly2::variable(1, kChartNames);

void criterion_1() {
  const auto start = Clock::now();
  std::mt19937_64 g(101);
  int bad = 0;
  for (int n = 0; n < 20; ++n) {
    const sir::Params p = gen::sir_params(g);
    const PlanarField f = sir::make_field(p);
    const ChartField u2 = to_chart(f, ChartId::U2), u1 = to_chart(f, ChartId::U1);
    // lambda_tau = -beta lambda x + (q+mu) lambda^2,  x_tau = A lambda^2 - beta x - beta x^2 + q lambda x
    const bool ok2 = u2.lam_dot == -p.beta * L * X + (p.q + p.mu) * L * L &&
                     u2.x_dot == p.A * L * L - p.beta * X - p.beta * X * X + p.q * L * X;
    // lambda_tau = -A lambda^3 + beta lambda x + mu lambda^2,  x_tau = beta x - q lambda x - A lambda^2 x + beta x^2
    const bool ok1 = u1.lam_dot == -p.A * L * L * L + p.beta * L * X + p.mu * L * L &&
                     u1.x_dot == p.beta * X - p.q * L * X - p.A * L * L * X + p.beta * X * X;
    if (!ok1 || !ok2) ++bad;
  }
  const double t = seconds_since(start);
  verdict("1", bad == 0 && t < 1.0, "chart-transform exactness",
          std::to_string(20 - bad) + "/20 parameter sets match U1 and U2 term-for-term, " + fmt("%.3f s", t));
}

void criterion_2() {
  const auto start = Clock::now();
  std::mt19937_64 g(102);
  int bad = 0;
  for (int n = 0; n < 20; ++n) {
    const sir::Params p = gen::critical_params(g);
    const CmfReduction r = reduce(sir::make_field(p), sir::analyze(p).e0);
    const Rational mu2 = p.mu * p.mu;
    bool ok = r.graph[1] == -p.A * p.beta / mu2 && r.reduced_original[2] == -p.A * p.beta * p.beta / mu2;
    for (const auto& c : invariance_residual(r)) ok = ok && c == 0;
    if (!ok) ++bad;
  }
  int bad_chart = 0;
  for (int n = 0; n < 20; ++n) {
    const sir::Params p = gen::sir_params(g);
    const CmfReduction r = reduce_chart_infinity(to_chart(sir::make_field(p), ChartId::U2));
    const bool ok = r.graph[2] == p.A / p.beta && r.reduced_original[2] == p.q + p.mu &&
                    r.reduced_original[3] == -p.A;
    if (!ok) ++bad_chart;
  }
  const double t = seconds_since(start);
  verdict("2", bad == 0 && bad_chart == 0 && t < 1.0, "center-manifold exactness",
          std::to_string(20 - bad) + "/20 constrained E0 draws, " + std::to_string(20 - bad_chart) +
              "/20 U2 reductions exact, " + fmt("%.3f s", t));
}

void criterion_3() {
  std::mt19937_64 g(103);
  int bad = 0, counts[3] = {0, 0, 0};
  for (int n = 0; n < 100; ++n) {
    const sir::Params p = n % 3 == 0 ? gen::critical_params(g) : gen::sir_params(g);
    const auto a = sir::analyze(p);
    const Classification c = make_equilibrium(sir::make_field(p), a.e0).classification;
    const int cmp = sgn(a.r0 - 1);
    ++counts[cmp + 1];
    const Classification expected = cmp < 0   ? Classification::Sink
                                    : cmp > 0 ? Classification::Saddle
                                              : Classification::NonhyperbolicSemisimpleZero;
    if (c != expected) ++bad;
  }
  const bool spans = counts[0] > 0 && counts[1] > 0 && counts[2] > 0;
  verdict("3", bad == 0 && spans, "regime trichotomy at E0",
          std::to_string(100 - bad) + "/100 correct; R0<1: " + std::to_string(counts[0]) +
              ", R0=1: " + std::to_string(counts[1]) + ", R0>1: " + std::to_string(counts[2]));
}

struct RegimeRun {
  std::string name;
  sir::Params params;
  Vec2 target;
  LyapunovKind lyapunov;
  std::vector<Trajectory> trajectories;
};

std::vector<RegimeRun> criterion_4() {
  std::vector<RegimeRun> runs{
      {"supercritical (1,3,1,1) -> E*", {1, 3, 1, 1}, {2.0 / 3, 1.0 / 6}, LyapunovKind::Endemic, {}},
      {"subcritical (1,1,1,1) -> E0", {1, 1, 1, 1}, {1.0, 0.0}, LyapunovKind::DiseaseFree, {}},
      {"critical (1,2,1,1) -> E0", {1, 2, 1, 1}, {1.0, 0.0}, LyapunovKind::DiseaseFree, {}},
  };
  const char* ids[] = {"4a", "4b", "4c"};
  std::mt19937_64 g(104);
  std::uniform_real_distribution<double> angle(0.0, std::acos(0.0)), log_r(std::log(1e-2), std::log(1e3));
  std::vector<Vec2> starts;
  for (int n = 0; n < 100; ++n) {
    const double a = angle(g), r = std::exp(log_r(g));
    starts.push_back({r * std::cos(a) + 1e-9, r * std::sin(a) + 1e-9});
  }
  const auto start = Clock::now();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    auto& run = runs[k];
    const PlanarField f = sir::make_field(run.params);
    int converged = 0, escapes = 0;
    double worst = 0.0;
    for (const auto& s : starts) {
      Trajectory t = trace_on_disk(f, s, 500.0);
      const Vec2 end = t.terminal.kind == TerminalKind::ConvergedTo ? t.terminal.point
                                                                     : t.plane_point(t.samples.size() - 1);
      const bool boundary = t.terminal.kind == TerminalKind::LeftRegion;
      const double dist = boundary ? INFINITY : std::hypot(end[0] - run.target[0], end[1] - run.target[1]);
      worst = std::max(worst, dist);
      if (boundary) ++escapes;
      if (dist <= 1e-5 && t.back().t <= 500.0 + 1e-9) ++converged;
      run.trajectories.push_back(std::move(t));
    }
    verdict(ids[k], converged == 100 && escapes == 0, "global behavior, " + run.name,
            std::to_string(converged) + "/100 within 1e-5 by t=500, " + std::to_string(escapes) +
                " escapes, worst distance " + fmt("%.3g", worst));
  }
  const double t = seconds_since(start);
  verdict("4t", t < 30.0, "global behavior runtime", fmt("%.2f s for 300 trajectories", t));
  return runs;
}

void criterion_5(const std::vector<RegimeRun>& runs) {
  int checked = 0, bad = 0;
  double worst = 0.0;
  for (const auto& run : runs) {
    const LyapunovFunction v = sir::lyapunov(run.params, run.lyapunov);
    for (const auto& t : run.trajectories) {
      const LyapunovReport r = lyapunov_check(t, v);
      worst = std::max(worst, r.max_increase);
      ++checked;
      if (r.max_increase > 1e-8) ++bad;
    }
  }
  verdict("5", bad == 0, "Lyapunov monotonicity",
          std::to_string(checked - bad) + "/" + std::to_string(checked) +
              " trajectories with max increase <= 1e-8, worst " + fmt("%.3g", worst));
}

void criterion_6() {
  const auto start = Clock::now();
  const sir::Params sets[] = {{1, 1, 1, 1}, {1, 1, 2, 1}, {2, 1, 1, 3},
                              {1, 2, 1, 1}, {2, 1, 1, 1}, {3, 2, 2, 1}};
  int ok = 0;
  std::string detail;
  for (const auto& p : sets) {
    const auto res = asymptotics_report(p, {3, 0.5});
    if (res.within_tolerance) ++ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s: %.5g vs %s", detail.empty() ? "" : "; ",
                  res.report["fit"]["model"].get<std::string>() == "exponential" ? "rate" : "slope",
                  res.report["fit"]["rate_or_slope"].get<double>(),
                  res.report["predicted"].get<std::string>().c_str());
    detail += buf;
  }
  const double t = seconds_since(start);
  verdict("6", ok == 6 && t < 10.0, "asymptotic rates",
          std::to_string(ok) + "/6 within tolerance with r^2 > 0.999, " + fmt("%.2f s; ", t) + detail);
}

bool lambda_increases(const ChartField& cf, const Vec2& from) {
  const Trajectory t = integrate_chart(cf, from, 200.0);
  double prev = from[0];
  for (const auto& s : t.samples) {
    if (s.point[0] < prev) return false;
    prev = s.point[0];
    if (prev >= 0.1) break;
  }
  return prev > from[0];
}

void criterion_7() {
  std::mt19937_64 g(107);
  int verdicts_ok = 0;
  for (int n = 0; n < 20; ++n) {
    const sir::Params p = gen::sir_params(g);
    const PlanarField f = sir::make_field(p);
    bool ok = true;
    for (ChartId c : {ChartId::U2, ChartId::U1}) {
      const ChartField cf = to_chart(f, c);
      const auto eqs = infinity_equilibria(cf);
      ok = ok && !eqs.empty() && eqs[0].exact_location && (*eqs[0].exact_location)[1] == 0 &&
           infinity_direction(cf, eqs[0]) == FlowDirection::AwayFromEquilibrium;
    }
    if (ok) ++verdicts_ok;
  }
  const sir::Params p{1, 3, 1, 1};
  const PlanarField f = sir::make_field(p);
  const ChartField u2 = to_chart(f, ChartId::U2), u1 = to_chart(f, ChartId::U1);
  const double lam0 = 1e-3;
  int increasing = 0;
  for (int j = 0; j < 5; ++j) {
    const double x2 = j / 5.0 * Rational(p.q + p.mu).get_d() * lam0 / p.beta.get_d();
    if (lambda_increases(u2, {lam0, x2})) ++increasing;
    if (lambda_increases(u1, {lam0, j * lam0 / 4})) ++increasing;
  }
  verdict("7", verdicts_ok == 20 && increasing == 10, "infinity verdicts",
          std::to_string(verdicts_ok) + "/20 draws give away-from-equilibrium at E1 and E2, lambda increasing on " +
              std::to_string(increasing) + "/10 chart integrations from lambda = 1e-3");
}

void criterion_8() {
  std::mt19937_64 g(108);
  int bad = 0, total = 0;
  for (ChartId c : {ChartId::U1, ChartId::U2}) {
    for (int n = 0; n < 100; ++n) {
      const PlanarField f = n % 2 == 0 ? sir::make_field(gen::sir_params(g))
                                       : PlanarField(gen::poly(g, 4) + Poly2::monomial(1, 1, 1), gen::poly(g, 4));
      const ChartField cf = to_chart(f, c);
      const Rational pos = gen::positive(g), any = gen::rational(g);
      const RatVec2 si = c == ChartId::U1 ? RatVec2{pos, any} : RatVec2{any, pos};
      const RatMat2 j = chart_change_jacobian(si, c);
      const RatVec2 pq = f.eval(si);
      const RatVec2 lx = plane_to_chart(si, c);
      Rational scale = 1;
      for (int k = 0; k < cf.rescale_power; ++k) scale *= lx[0];
      const Rational lam_t = scale * (j[0][0] * pq[0] + j[0][1] * pq[1]);
      const Rational x_t = scale * (j[1][0] * pq[0] + j[1][1] * pq[1]);
      ++total;
      if (cf.lam_dot.eval(lx[0], lx[1]) != lam_t || cf.x_dot.eval(lx[0], lx[1]) != x_t) ++bad;
    }
  }
  verdict("8", bad == 0, "pushforward identity",
          std::to_string(total - bad) + "/" + std::to_string(total) + " rational points exact over U1 and U2");
}

void criterion_9() {
  PortraitSpec spec{FieldSource::from_sir({1, 3, 1, 1}), ring_seeds(12, 3.0), 500.0, 1e-9, {}};
  spec.seeds.push_back({50, 50});
  spec.seeds.push_back({200, 0.5});
  const Portrait a = render_portrait(spec);
  const Portrait b = render_portrait(spec);
  const std::string ja = a.sidecar.dump(2), jb = b.sidecar.dump(2);
  verdict("9", a.svg == b.svg && ja == jb, "determinism",
          "SVG " + std::to_string(a.svg.size()) + " bytes, JSON " + std::to_string(ja.size()) +
              " bytes, identical across two runs");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> simple{criterion_1, criterion_2, criterion_3};
  for (const auto& c : simple) c();
  const auto runs = criterion_4();
  criterion_5(runs);
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
