#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "poincare/report.hpp"

using namespace poincare;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldFlags {
  std::string A, beta, mu, q;
  std::string config;
  std::string P, Q;
};

void add_field_flags(CLI::App* cmd, FieldFlags& f) {
  cmd->add_option("--A", f.A, "recruitment rate");
  cmd->add_option("--beta", f.beta, "transmission rate");
  cmd->add_option("--mu", f.mu, "natural mortality");
  cmd->add_option("--q", f.q, "recovery rate");
  cmd->add_option("--config", f.config, "parameter file (JSON or key=value)");
  cmd->add_option("--P", f.P, "dS/dt as a polynomial in S, I");
  cmd->add_option("--Q", f.Q, "dI/dt as a polynomial in S, I");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Rational usage_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

sir::PartialParams partial_params(const FieldFlags& f) {
  sir::PartialParams flags;
  if (!f.A.empty()) flags.A = usage_rational("--A", f.A);
  if (!f.beta.empty()) flags.beta = usage_rational("--beta", f.beta);
  if (!f.mu.empty()) flags.mu = usage_rational("--mu", f.mu);
  if (!f.q.empty()) flags.q = usage_rational("--q", f.q);
  if (!f.config.empty()) {
    sir::PartialParams file;
    try {
      file = sir::parse_params(read_file(f.config));
    } catch (const std::invalid_argument& e) {
      throw UsageError(f.config + ": " + e.what());
    }
    flags.merge_missing(file);
  }
  return flags;
}

sir::Params require_sir(const sir::PartialParams& pp) {
  std::string missing;
  if (!pp.A) missing += " --A";
  if (!pp.beta) missing += " --beta";
  if (!pp.mu) missing += " --mu";
  if (!pp.q) missing += " --q";
  if (!missing.empty()) throw UsageError("missing SIR parameter(s):" + missing);
  try {
    return pp.require();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FieldSource field_source(const FieldFlags& f) {
  const auto pp = partial_params(f);
  if (f.P.empty() != f.Q.empty()) throw UsageError("--P and --Q must be given together");
  if (f.P.empty()) return FieldSource::from_sir(require_sir(pp));
  ParamTable table;
  if (pp.A) table["A"] = *pp.A;
  if (pp.beta) table["beta"] = *pp.beta;
  if (pp.mu) table["mu"] = *pp.mu;
  if (pp.q) table["q"] = *pp.q;
  try {
    return FieldSource::from_polys(parse_poly(f.P, kPlaneNames, table),
                                   parse_poly(f.Q, kPlaneNames, table));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> parse_numbers(const std::string& flag, const std::string& text,
                                  std::size_t count) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": not a number: '" + item + "'");
    }
  }
  if (out.size() != count)
    throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated values");
  return out;
}

Vec2 parse_seed(const std::string& text) {
  const auto v = parse_numbers("--seed", text, 2);
  return {v[0], v[1]};
}

void emit_json(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global phase portraits of planar polynomial fields on the Poincare disk"};
  app.require_subcommand(1);

  FieldFlags af;
  std::string a_region, a_json;
  int a_order = kDefaultCmfOrder;
  auto* analyze = app.add_subcommand("analyze", "equilibria, charts at infinity and reductions");
  add_field_flags(analyze, af);
  analyze->add_option("--region", a_region, "S_min,S_max,I_min,I_max for the equilibrium search");
  analyze->add_option("--order", a_order, "center-manifold order (2-10)");
  analyze->add_option("--json", a_json, "output path (default stdout)");

  FieldFlags pf;
  std::vector<std::string> p_seeds;
  int p_ring = 0;
  double p_radius = 1.0, p_tmax = 500.0, p_tol = 1e-9, p_disk = 300.0;
  std::string p_svg, p_json, p_csv;
  auto* portrait = app.add_subcommand("portrait", "render the Poincare-disk portrait as SVG");
  add_field_flags(portrait, pf);
  portrait->add_option("--seed", p_seeds, "initial point S,I (repeatable)");
  auto* ring = portrait->add_option("--seed-ring", p_ring, "N seeds on a quarter circle");
  portrait->add_option("--radius", p_radius, "radius of the seed ring")->needs(ring);
  portrait->add_option("--t-max", p_tmax, "integration horizon");
  portrait->add_option("--tol", p_tol, "integrator tolerance");
  portrait->add_option("--disk-radius", p_disk, "disk radius in px");
  portrait->add_option("--svg", p_svg, "SVG output path");
  portrait->add_option("--json", p_json, "JSON sidecar path");
  portrait->add_option("--csv", p_csv, "CSV trajectory export path");

  FieldFlags sf;
  std::string s_seed = "3,0.5", s_json, s_csv;
  double s_tmax = 0.0;
  auto* asym = app.add_subcommand("asymptotics", "fit the decay of I(t) for R0 <= 1");
  add_field_flags(asym, sf);
  asym->add_option("--seed", s_seed, "initial point S,I");
  asym->add_option("--t-max", s_tmax, "integration horizon (default from the regime)");
  asym->add_option("--json", s_json, "output path (default stdout)");
  asym->add_option("--csv", s_csv, "CSV trajectory export path");

  FieldFlags cf;
  std::string c_json;
  auto* chart = app.add_subcommand("chart", "dump the desingularized chart fields U1 and U2");
  add_field_flags(chart, cf);
  chart->add_option("--json", c_json, "output path (default stdout)");

  FieldFlags mf;
  std::string m_point, m_chart, m_x = "0", m_json;
  int m_order = kDefaultCmfOrder;
  auto* cmf = app.add_subcommand("cmf", "center-manifold reduction at one equilibrium");
  add_field_flags(cmf, mf);
  cmf->add_option("--point", m_point, "exact equilibrium S,I (rationals)");
  cmf->add_option("--chart", m_chart, "U1 or U2: reduce at (0, x) on the line at infinity");
  cmf->add_option("--x", m_x, "x coordinate of the chart equilibrium");
  cmf->add_option("--order", m_order, "reduction order (2-10)");
  cmf->add_option("--json", m_json, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      AnalyzeOptions o;
      o.cmf_order = a_order;
      if (!a_region.empty()) {
        const auto r = parse_numbers("--region", a_region, 4);
        if (!(r[0] < r[1]) || !(r[2] < r[3])) throw UsageError("--region: empty box");
        o.region = Region{r[0], r[1], r[2], r[3]};
      }
      if (a_order < 2 || a_order > 10) throw UsageError("--order must lie in [2, 10]");
      emit_json(analyze_report(field_source(af), o), a_json);
    } else if (*portrait) {
      if (p_svg.empty() && p_json.empty() && p_csv.empty())
        throw UsageError("portrait: give at least one of --svg, --json, --csv");
      PortraitSpec spec{field_source(pf), {}, p_tmax, p_tol, {}};
      spec.style.disk_radius_px = p_disk;
      for (const auto& s : p_seeds) spec.seeds.push_back(parse_seed(s));
      if (p_ring > 0) {
        if (!(p_radius > 0)) throw UsageError("--radius must be positive");
        for (const auto& s : ring_seeds(p_ring, p_radius)) spec.seeds.push_back(s);
      }
      if (!(p_tmax > 0) || !(p_tol > 0)) throw UsageError("--t-max and --tol must be positive");
      Portrait out;
      try {
        out = render_portrait(spec);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (!p_svg.empty()) write_file(p_svg, out.svg);
      if (!p_json.empty()) write_file(p_json, out.sidecar.dump(2) + "\n");
      if (!p_csv.empty()) {
        std::ostringstream csv;
        for (std::size_t k = 0; k < out.trajectories.size(); ++k) {
          std::ostringstream one;
          write_csv(one, out.trajectories[k]);
          std::string text = one.str();
          if (k > 0) text = text.substr(text.find('\n') + 1);
          csv << text;
        }
        if (out.trajectories.empty()) csv << "t,S,I,chart,u,v\n";
        write_file(p_csv, csv.str());
      }
    } else if (*asym) {
      const FieldSource src = field_source(sf);
      if (!src.sir) throw UsageError("asymptotics needs SIR parameters, not --P/--Q");
      const Vec2 seed = parse_seed(s_seed);
      if (!(seed[0] > 0) || !(seed[1] > 0)) throw UsageError("--seed must have S > 0 and I > 0");
      std::optional<double> horizon;
      if (s_tmax != 0.0) {
        if (!(s_tmax > 0)) throw UsageError("--t-max must be positive");
        horizon = s_tmax;
      }
      const auto result = asymptotics_report(*src.sir, seed, horizon);
      emit_json(result.report, s_json);
      if (!s_csv.empty()) {
        IntegrateOptions o;
        o.tol = 1e-10;
        o.abs_tol = 1e-30;
        o.stop_on_convergence = false;
        const double t = result.report["t_max"].get<double>();
        o.max_step = t / 400.0;
        o.region = Region{-1.0, 1e12, -1.0, 1e12};
        std::ostringstream csv;
        write_csv(csv, integrate(src.field, seed, t, o));
        write_file(s_csv, csv.str());
      }
      if (!result.within_tolerance) {
        std::cerr << "asymptotics: fitted value outside tolerance\n";
        return 1;
      }
    } else if (*chart) {
      emit_json(chart_report(field_source(cf)), c_json);
    } else if (*cmf) {
      const FieldSource src = field_source(mf);
      if (m_point.empty() == m_chart.empty()) throw UsageError("cmf: give exactly one of --point, --chart");
      if (m_order < 2 || m_order > 10) throw UsageError("--order must lie in [2, 10]");
      Json r;
      r["schema_version"] = kSchemaVersion;
      r["command"] = "cmf";
      CmfReduction red;
      if (!m_point.empty()) {
        const auto comma = m_point.find(',');
        if (comma == std::string::npos) throw UsageError("--point: expected S,I");
        const RatVec2 at{usage_rational("--point", m_point.substr(0, comma)),
                         usage_rational("--point", m_point.substr(comma + 1))};
        r["at"] = Json{{"chart", "PLANE"}, {"point", {to_string(at[0]), to_string(at[1])}}};
        red = reduce(src.field, at, m_order);
      } else {
        ChartId id;
        try {
          id = parse_chart(m_chart);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        if (id == ChartId::PLANE) throw UsageError("--chart must be U1 or U2");
        const Rational x = usage_rational("--x", m_x);
        r["at"] = Json{{"chart", std::string(to_string(id))}, {"point", {"0", to_string(x)}}};
        red = reduce_chart_infinity(to_chart(src.field, id), m_order, x);
      }
      r["reduction"] = to_json(red);
      r["flow_direction"] = std::string(to_string(verdict_to_flow_direction(red, +1)));
      emit_json(r, m_json);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
