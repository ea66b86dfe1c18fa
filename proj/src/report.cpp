#include "poincare/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

namespace poincare {

namespace {

Json complex_json(const std::complex<double>& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json rational_pair(const RatVec2& v) { return Json::array({to_string(v[0]), to_string(v[1])}); }

Json series_json(const Series& s) {
  Json out = Json::array();
  for (const auto& c : s) out.push_back(to_string(c));
  return out;
}

}  // namespace

Json to_json(const Poly2& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(Json{{"i", e.first}, {"j", e.second}, {"c", to_string(c)}});
  return Json{{"text", p.to_string()},
              {"variables", Json::array({p.names()[0], p.names()[1]})},
              {"terms", terms}};
}

Json to_json(const Equilibrium& e) {
  Json j;
  j["location"] = Json::array({e.location[0], e.location[1]});
  j["exact_location"] = e.exact_location ? rational_pair(*e.exact_location) : Json(nullptr);
  j["jacobian"] = Json::array({Json::array({e.jacobian[0][0], e.jacobian[0][1]}),
                               Json::array({e.jacobian[1][0], e.jacobian[1][1]})});
  Json values = Json::array(), vectors = Json::array();
  for (const auto& pair : e.eigen.pairs) {
    values.push_back(complex_json(pair.value));
    vectors.push_back(Json::array({complex_json(pair.vector[0]), complex_json(pair.vector[1])}));
  }
  j["eigenvalues"] = values;
  j["eigenvectors"] = vectors;
  j["defective"] = e.eigen.defective;
  j["classification"] = std::string(to_string(e.classification));
  j["hyperbolic"] = e.hyperbolic;
  j["near_threshold"] = e.near_threshold;
  j["residual"] = e.residual;
  return j;
}

Json to_json(const ChartField& cf) {
  return Json{{"chart", std::string(to_string(cf.chart))},
              {"lam_dot", to_json(cf.lam_dot)},
              {"x_dot", to_json(cf.x_dot)},
              {"rescale_power", cf.rescale_power},
              {"source_degree", cf.source_degree}};
}

Json to_json(const CmfReduction& r) {
  Json j;
  j["equilibrium"] = rational_pair(r.equilibrium);
  j["eigenbasis"] = Json::array({rational_pair({r.eigenbasis[0][0], r.eigenbasis[1][0]}),
                                 rational_pair({r.eigenbasis[0][1], r.eigenbasis[1][1]})});
  j["hyperbolic_eigenvalue"] = to_string(r.hyperbolic_eigenvalue);
  j["order"] = r.order;
  j["h_coeffs"] = series_json(r.h);
  j["reduced_coeffs"] = series_json(r.reduced);
  j["parameter"] = r.names[static_cast<std::size_t>(r.parameter_index)];
  j["graph_coeffs"] = series_json(r.graph);
  j["reduced_original_coeffs"] = series_json(r.reduced_original);
  j["graph"] = graph_text(r);
  j["graph_leading"] = graph_text(r, 1);
  j["reduced_dynamics"] = reduced_dynamics_text(r);
  j["reduced_dynamics_leading"] = reduced_dynamics_text(r, 2);
  j["stability_verdict"] = std::string(to_string(r.verdict));
  j["note"] =
      "formal Taylor expansion shared by every center manifold of this equilibrium";
  return j;
}

Json to_json(const LyapunovReport& r) {
  return Json{{"function", std::string(to_string(r.kind))},
              {"max_increase", r.max_increase},
              {"final_value", r.final_value},
              {"tolerance", r.tolerance},
              {"monotone", r.monotone}};
}

Json to_json(const DecayFit& fit) {
  return Json{{"model", std::string(to_string(fit.model))},
              {"rate_or_slope", fit.rate_or_slope},
              {"intercept", fit.intercept},
              {"r_squared", fit.r_squared},
              {"window", Json::array({fit.t_start, fit.t_end})}};
}

Json trajectory_json(const Trajectory& traj) {
  Json samples = Json::array();
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const auto& s = traj.samples[k];
    const Vec2 si = traj.plane_point(k);
    const DiskPoint d = traj.disk_point(k);
    samples.push_back(Json{{"t", s.t},
                           {"tau", s.tau},
                           {"chart", std::string(to_string(s.chart))},
                           {"point", Json::array({s.point[0], s.point[1]})},
                           {"S", si[0]},
                           {"I", si[1]},
                           {"u", d.u},
                           {"v", d.v}});
  }
  return Json{{"terminal", std::string(to_string(traj.terminal.kind))},
              {"terminal_point", Json::array({traj.terminal.point[0], traj.terminal.point[1]})},
              {"time_is_approximate", traj.time_is_approximate()},
              {"samples", samples}};
}

FlowDirection infinity_direction(const ChartField& cf, const Equilibrium& e,
                                 std::optional<CmfReduction>* reduction, int order) {
  const double transverse = e.jacobian[0][0];
  const double tol = hyperbolicity_tolerance({e.eigen.pairs[0].value, e.eigen.pairs[1].value});
  if (transverse < -tol) return FlowDirection::TowardEquilibrium;
  if (transverse > tol) return FlowDirection::AwayFromEquilibrium;
  if (!e.exact_location) return FlowDirection::Undetermined;
  try {
    CmfReduction r = reduce_chart_infinity(cf, order, (*e.exact_location)[1]);
    const FlowDirection d = verdict_to_flow_direction(r, +1);
    if (reduction) *reduction = std::move(r);
    return d;
  } catch (const std::domain_error&) {
    return FlowDirection::Undetermined;
  }
}

FieldSource FieldSource::from_sir(const sir::Params& p) { return {sir::make_field(p), p}; }

FieldSource FieldSource::from_polys(const Poly2& p, const Poly2& q) {
  PlanarField f(p, q);
  if (f.is_zero()) throw std::invalid_argument("the vector field is identically zero");
  return {std::move(f), std::nullopt};
}

namespace {

struct NamedEquilibrium {
  std::string name;
  Equilibrium eq;
};

Region default_region(const FieldSource& source) {
  if (!source.sir) return {0.0, 10.0, 0.0, 10.0};
  const auto a = sir::analyze(*source.sir);
  double extent = std::max(5.0, 2.0 * a.e0[0].get_d());
  if (a.e_star) extent = std::max({extent, 2.0 * (*a.e_star)[0].get_d(), 2.0 * (*a.e_star)[1].get_d()});
  return {0.0, extent, 0.0, extent};
}

std::vector<NamedEquilibrium> finite_equilibria(const FieldSource& source, const Region& region) {
  std::vector<RatVec2> candidates;
  std::optional<sir::Analysis> a;
  if (source.sir) {
    a = sir::analyze(*source.sir);
    candidates.push_back(a->e0);
    if (a->e_star) candidates.push_back(*a->e_star);
  }
  std::vector<NamedEquilibrium> out;
  int unnamed = 0;
  for (auto& e : find_equilibria(source.field, region, {}, candidates)) {
    std::string name;
    if (a && e.exact_location && *e.exact_location == a->e0) name = "E0";
    else if (a && a->e_star && e.exact_location && *e.exact_location == *a->e_star) name = "E*";
    else name = "P" + std::to_string(++unnamed);
    out.push_back({std::move(name), std::move(e)});
  }
  return out;
}

struct InfinityPoint {
  std::string name;
  ChartId chart;
  Equilibrium eq;
  FlowDirection direction;
  std::optional<CmfReduction> reduction;
};

std::vector<InfinityPoint> infinity_points(const FieldSource& source, int order) {
  std::vector<InfinityPoint> out;
  for (ChartId chart : {ChartId::U1, ChartId::U2}) {
    const ChartField cf = to_chart(source.field, chart);
    int k = 0;
    for (auto& e : infinity_equilibria(cf)) {
      InfinityPoint p{"", chart, e, FlowDirection::Undetermined, std::nullopt};
      p.direction = infinity_direction(cf, e, &p.reduction, order);
      const bool origin = e.exact_location && (*e.exact_location)[1] == 0;
      if (source.sir && origin) p.name = chart == ChartId::U2 ? "E1" : "E2";
      else p.name = std::string(to_string(chart)) + "[" + std::to_string(k) + "]";
      ++k;
      out.push_back(std::move(p));
    }
  }
  return out;
}

Json field_json(const FieldSource& source) {
  Json j{{"P", to_json(source.field.p())},
         {"Q", to_json(source.field.q())},
         {"degree", source.field.degree()}};
  return j;
}

Json sir_json(const sir::Params& p) {
  const auto a = sir::analyze(p);
  Json j;
  j["A"] = to_string(p.A);
  j["beta"] = to_string(p.beta);
  j["mu"] = to_string(p.mu);
  j["q"] = to_string(p.q);
  j["r0"] = to_string(a.r0);
  j["regime"] = std::string(sir::to_string(a.regime));
  j["e0"] = rational_pair(a.e0);
  j["e_star"] = a.e_star ? rational_pair(*a.e_star) : Json(nullptr);
  j["predicted_rate"] = a.predicted_rate ? Json(to_string(*a.predicted_rate)) : Json(nullptr);
  j["predicted_slope"] = a.predicted_slope ? Json(to_string(*a.predicted_slope)) : Json(nullptr);
  return j;
}

}  // namespace

Json analyze_report(const FieldSource& source, const AnalyzeOptions& options) {
  const Region region = options.region.value_or(default_region(source));
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = "analyze";
  r["field"] = field_json(source);
  r["sir"] = source.sir ? sir_json(*source.sir) : Json(nullptr);
  r["region"] = Json::array({region.s_min, region.s_max, region.i_min, region.i_max});

  Json eqs = Json::array();
  Json cmfs = Json::array();
  for (const auto& [name, e] : finite_equilibria(source, region)) {
    Json j{{"name", name}};
    j.update(to_json(e));
    eqs.push_back(j);
    if (e.classification == Classification::NonhyperbolicSemisimpleZero && e.exact_location) {
      try {
        const CmfReduction red = reduce(source.field, *e.exact_location, options.cmf_order);
        Json c = to_json(red);
        c["flow_direction"] = std::string(to_string(verdict_to_flow_direction(red, +1)));
        cmfs.push_back(Json{{"at", name}, {"reduction", c}});
      } catch (const std::domain_error& err) {
        cmfs.push_back(Json{{"at", name}, {"error", err.what()}});
      }
    }
  }
  r["equilibria"] = eqs;
  r["center_manifolds"] = cmfs;

  Json charts = Json::array();
  const auto points = infinity_points(source, options.cmf_order);
  for (ChartId chart : {ChartId::U1, ChartId::U2}) {
    const ChartField cf = to_chart(source.field, chart);
    Json c = to_json(cf);
    c["infinity_degenerate"] = infinity_is_degenerate(cf);
    Json inf = Json::array();
    for (const auto& p : points) {
      if (p.chart != chart) continue;
      const DiskPoint d = chart_to_disk(p.eq.location, chart);
      Json j{{"name", p.name}};
      j.update(to_json(p.eq));
      j["disk"] = Json::array({d.u, d.v});
      j["verdict"] = std::string(to_string(p.direction));
      j["reduction"] = p.reduction ? to_json(*p.reduction) : Json(nullptr);
      inf.push_back(j);
    }
    c["infinity_equilibria"] = inf;
    charts.push_back(c);
  }
  r["charts"] = charts;
  return r;
}

Json chart_report(const FieldSource& source) {
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = "chart";
  r["field"] = field_json(source);
  Json charts = Json::array();
  for (ChartId chart : {ChartId::U1, ChartId::U2}) {
    const ChartField cf = to_chart(source.field, chart);
    Json c = to_json(cf);
    c["infinity_degenerate"] = infinity_is_degenerate(cf);
    charts.push_back(c);
  }
  r["charts"] = charts;
  return r;
}

AsymptoticsResult asymptotics_report(const sir::Params& p, const Vec2& seed,
                                     std::optional<double> t_max) {
  const auto a = sir::analyze(p);
  if (a.regime == sir::Regime::Supercritical)
    throw std::domain_error(
        "asymptotics: R0 = " + to_string(a.r0) +
        " > 1; I(t) tends to I* > 0 and no closed-form decay law is asserted in this regime");
  if (!(seed[0] > 0) || !(seed[1] > 0))
    throw std::invalid_argument("asymptotics: the seed must have S > 0 and I > 0");

  const bool critical = a.regime == sir::Regime::Critical;
  const Rational predicted = critical ? *a.predicted_slope : *a.predicted_rate;
  const double horizon =
      t_max.value_or(critical ? 1000.0 : 30.0 / std::abs(predicted.get_d()));
  if (!(horizon > 0)) throw std::invalid_argument("asymptotics: t_max must be positive");

  IntegrateOptions o;
  o.tol = 1e-10;
  o.abs_tol = 1e-30;  // relative control: I(t) becomes very small
  o.stop_on_convergence = false;
  o.max_step = horizon / 400.0;
  o.region = Region{-1.0, 1e12, -1.0, 1e12};
  const Trajectory traj = integrate(sir::make_field(p), seed, horizon, o);
  const DecayModel model = critical ? DecayModel::AlgebraicReciprocal : DecayModel::Exponential;
  const DecayFit fit = fit_decay(traj, 1, model);

  const double expected = predicted.get_d();
  const double rel = std::abs(fit.rate_or_slope - expected) / std::abs(expected);
  const double tolerance = critical ? 0.05 : 0.02;
  const bool ok = rel <= tolerance && fit.r_squared > 0.999;

  Json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = "asymptotics";
  r["sir"] = sir_json(p);
  r["seed"] = Json::array({seed[0], seed[1]});
  r["t_max"] = horizon;
  r["quantity"] = critical ? "slope of 1/I(t): A*beta^2/mu^2" : "rate of I(t): (q+mu)(R0-1)";
  r["predicted"] = to_string(predicted);
  r["predicted_value"] = expected;
  r["fit"] = to_json(fit);
  r["relative_error"] = rel;
  r["tolerance"] = tolerance;
  r["within_tolerance"] = ok;
  return {r, ok};
}

std::vector<Vec2> ring_seeds(int n, double r) {
  if (n < 1) throw std::invalid_argument("ring seed count must be at least 1");
  if (!(r > 0)) throw std::invalid_argument("ring radius must be positive");
  std::vector<Vec2> out;
  const double quarter = std::acos(0.0);
  for (int k = 0; k < n; ++k) {
    const double theta = quarter * (k + 0.5) / n;
    out.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

struct Canvas {
  double radius;
  double margin;
  double center() const { return radius + margin; }
  double size() const { return 2.0 * center(); }
  std::pair<double, double> map(const DiskPoint& d) const {
    return {center() + radius * d.u, center() - radius * d.v};
  }
};

enum class Fill { Filled, Open, Half };

Fill glyph_fill(Classification c) {
  switch (c) {
    case Classification::Sink: return Fill::Filled;
    case Classification::Saddle:
    case Classification::Source:
    case Classification::CenterLinear: return Fill::Open;
    default: return Fill::Half;
  }
}

void glyph(std::ostringstream& out, double x, double y, Fill fill, const std::string& label) {
  const double r = 5.0;
  out << "  <g class=\"equilibrium\">\n";
  out << "    <circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
      << "\" fill=\"" << (fill == Fill::Filled ? "#000000" : "#ffffff")
      << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  if (fill == Fill::Half) {
    out << "    <path d=\"M " << num(x - r) << ' ' << num(y) << " A " << num(r) << ' ' << num(r)
        << " 0 0 1 " << num(x + r) << ' ' << num(y) << " Z\" fill=\"#000000\"/>\n";
  }
  if (!label.empty()) {
    out << "    <text x=\"" << num(x + 7) << "\" y=\"" << num(y - 7)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
  }
  out << "  </g>\n";
}

const std::string& terminal_color(const PortraitStyle& s, TerminalKind k) {
  switch (k) {
    case TerminalKind::ConvergedTo: return s.converged_color;
    case TerminalKind::LeftRegion: return s.left_region_color;
    case TerminalKind::TimeExhausted: return s.exhausted_color;
    case TerminalKind::StepUnderflow: return s.underflow_color;
  }
  return s.exhausted_color;
}

void trajectory_svg(std::ostringstream& out, const Canvas& canvas, const PortraitStyle& style,
                    const Trajectory& traj) {
  std::vector<DiskPoint> pts;
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    DiskPoint d = traj.disk_point(k);
    const double r2 = d.radius2();
    if (r2 > 1.0) {
      const double s = 1.0 / std::sqrt(r2);
      d = {d.u * s, d.v * s};
    }
    if (!pts.empty()) {
      const double du = (d.u - pts.back().u) * canvas.radius;
      const double dv = (d.v - pts.back().v) * canvas.radius;
      if (std::hypot(du, dv) < 0.25 && k + 1 != traj.samples.size()) continue;
    }
    pts.push_back(d);
  }
  if (pts.size() < 2) return;
  const std::string& color = terminal_color(style, traj.terminal.kind);
  out << "  <polyline class=\"trajectory\" fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.2\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto [x, y] = canvas.map(pts[k]);
    out << (k ? " " : "") << num(x) << ',' << num(y);
  }
  out << "\"/>\n";

  // Arrowheads at fixed arc-length spacing, pointing along the flow.
  double travelled = 0.0;
  double next = 0.5 * style.arrow_spacing;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double du = pts[k].u - pts[k - 1].u, dv = pts[k].v - pts[k - 1].v;
    const double len = std::hypot(du, dv);
    while (len > 0 && travelled + len >= next) {
      const double f = (next - travelled) / len;
      const DiskPoint at{pts[k - 1].u + f * du, pts[k - 1].v + f * dv};
      const auto [x, y] = canvas.map(at);
      const double ux = du / len, uy = -dv / len;  // screen direction
      const double px = -uy, py = ux;
      out << "  <polygon class=\"arrow\" fill=\"" << color << "\" points=\"" << num(x + 5 * ux)
          << ',' << num(y + 5 * uy) << ' ' << num(x - 3 * ux + 3 * px) << ','
          << num(y - 3 * uy + 3 * py) << ' ' << num(x - 3 * ux - 3 * px) << ','
          << num(y - 3 * uy - 3 * py) << "\"/>\n";
      next += style.arrow_spacing;
    }
    travelled += len;
  }
}

}  // namespace

Portrait render_portrait(const PortraitSpec& spec) {
  if (spec.seeds.empty()) throw std::invalid_argument("portrait needs at least one seed");
  for (const auto& s : spec.seeds) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || s[0] < 0 || s[1] < 0)
      throw std::invalid_argument("portrait seed (" + num(s[0]) + ", " + num(s[1]) +
                                  ") lies outside the closed first quadrant");
  }
  if (!(spec.t_max > 0)) throw std::invalid_argument("portrait t_max must be positive");

  DiskTraceOptions options;
  options.integrate.tol = spec.tol;
  std::vector<std::future<Trajectory>> jobs;
  jobs.reserve(spec.seeds.size());
  for (const auto& seed : spec.seeds) {
    jobs.push_back(std::async(std::launch::async, [&spec, seed, &options] {
      return trace_on_disk(spec.source.field, seed, spec.t_max, options);
    }));
  }
  Portrait portrait;
  for (auto& j : jobs) portrait.trajectories.push_back(j.get());

  const Region region = default_region(spec.source);
  const auto finite = finite_equilibria(spec.source, region);
  const auto infinite = infinity_points(spec.source, kDefaultCmfOrder);

  const Canvas canvas{spec.style.disk_radius_px, spec.style.margin_px};
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(canvas.size())
      << "\" height=\"" << num(canvas.size()) << "\" viewBox=\"0 0 " << num(canvas.size()) << ' '
      << num(canvas.size()) << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  const double c = canvas.center(), r = canvas.radius;
  svg << "  <line class=\"axis\" x1=\"" << num(c - r) << "\" y1=\"" << num(c) << "\" x2=\""
      << num(c + r) << "\" y2=\"" << num(c) << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  svg << "  <line class=\"axis\" x1=\"" << num(c) << "\" y1=\"" << num(c - r) << "\" x2=\""
      << num(c) << "\" y2=\"" << num(c + r) << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  svg << "  <circle class=\"infinity\" cx=\"" << num(c) << "\" cy=\"" << num(c) << "\" r=\""
      << num(r) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  svg << "  <text x=\"" << num(c + r + 4) << "\" y=\"" << num(c + 14)
      << "\" font-family=\"sans-serif\" font-size=\"12\">S</text>\n";
  svg << "  <text x=\"" << num(c - 14) << "\" y=\"" << num(c - r - 6)
      << "\" font-family=\"sans-serif\" font-size=\"12\">I</text>\n";

  for (const auto& traj : portrait.trajectories) trajectory_svg(svg, canvas, spec.style, traj);

  Json eqs = Json::array();
  for (const auto& [name, e] : finite) {
    const DiskPoint d = plane_to_disk(e.location[0], e.location[1]);
    const auto [x, y] = canvas.map(d);
    glyph(svg, x, y, glyph_fill(e.classification), name);
    eqs.push_back(Json{{"name", name},
                       {"location", Json::array({e.location[0], e.location[1]})},
                       {"disk", Json::array({d.u, d.v})},
                       {"classification", std::string(to_string(e.classification))}});
  }
  Json inf = Json::array();
  for (const auto& p : infinite) {
    const DiskPoint d = chart_to_disk(p.eq.location, p.chart);
    const auto [x, y] = canvas.map(d);
    glyph(svg, x, y, glyph_fill(p.eq.classification), p.name);
    inf.push_back(Json{{"name", p.name},
                       {"chart", std::string(to_string(p.chart))},
                       {"location", Json::array({p.eq.location[0], p.eq.location[1]})},
                       {"disk", Json::array({d.u, d.v})},
                       {"classification", std::string(to_string(p.eq.classification))},
                       {"verdict", std::string(to_string(p.direction))}});
  }
  svg << "</svg>\n";
  portrait.svg = svg.str();

  Json trajs = Json::array();
  for (std::size_t k = 0; k < portrait.trajectories.size(); ++k) {
    const auto& t = portrait.trajectories[k];
    std::set<std::string> charts;
    for (const auto& s : t.samples) charts.insert(std::string(to_string(s.chart)));
    const DiskPoint last = t.disk_point(t.samples.size() - 1);
    trajs.push_back(Json{{"seed", Json::array({spec.seeds[k][0], spec.seeds[k][1]})},
                         {"terminal", std::string(to_string(t.terminal.kind))},
                         {"terminal_point", Json::array({t.terminal.point[0], t.terminal.point[1]})},
                         {"final_disk", Json::array({last.u, last.v})},
                         {"samples", t.samples.size()},
                         {"charts", Json(charts)},
                         {"time_is_approximate", t.time_is_approximate()}});
  }
  Json side;
  side["schema_version"] = kSchemaVersion;
  side["command"] = "portrait";
  side["field"] = field_json(spec.source);
  side["sir"] = spec.source.sir ? sir_json(*spec.source.sir) : Json(nullptr);
  side["t_max"] = spec.t_max;
  side["tol"] = spec.tol;
  side["disk_radius_px"] = spec.style.disk_radius_px;
  side["equilibria"] = eqs;
  side["infinity_equilibria"] = inf;
  side["trajectories"] = trajs;
  portrait.sidecar = side;
  return portrait;
}

}  // namespace poincare
