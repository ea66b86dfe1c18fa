#include "poincare/sir.hpp"

#include "json.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace poincare::sir {

using poincare::to_string;

void Params::validate() const {
  const std::pair<const char*, const Rational*> all[] = {
      {"A", &A}, {"beta", &beta}, {"mu", &mu}, {"q", &q}};
  for (const auto& [name, value] : all) {
    if (*value <= 0)
      throw std::invalid_argument(std::string("parameter ") + name + " must be positive, got " +
                                  to_string(*value));
  }
}

ParamTable Params::table() const { return {{"A", A}, {"beta", beta}, {"mu", mu}, {"q", q}}; }

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "?";
}

PlanarField make_field(const Params& p) {
  p.validate();
  const Poly2 s = Poly2::variable(0);
  const Poly2 i = Poly2::variable(1);
  const Poly2 si = s * i;
  Poly2 dp = Poly2::constant(p.A) - si * p.beta - s * p.mu;
  Poly2 dq = si * p.beta - i * Rational(p.q + p.mu);
  return PlanarField(std::move(dp), std::move(dq));
}

Rational basic_reproduction_number(const Params& p) {
  p.validate();
  return p.A * p.beta / (p.mu * (p.q + p.mu));
}

Analysis analyze(const Params& p) {
  Analysis a;
  a.r0 = basic_reproduction_number(p);
  a.regime = a.r0 < 1 ? Regime::Subcritical : (a.r0 == 1 ? Regime::Critical : Regime::Supercritical);
  a.e0 = {Rational(p.A / p.mu), Rational(0)};
  if (a.regime == Regime::Supercritical)
    a.e_star = RatVec2{Rational((p.q + p.mu) / p.beta), Rational(p.mu * (a.r0 - 1) / p.beta)};
  if (a.regime == Regime::Subcritical) a.predicted_rate = Rational((p.q + p.mu) * (a.r0 - 1));
  if (a.regime == Regime::Critical)
    a.predicted_slope = Rational(p.A * p.beta * p.beta / (p.mu * p.mu));
  return a;
}

LyapunovFunction lyapunov(const Params& p, LyapunovKind kind) {
  const Analysis a = analyze(p);
  if (kind == LyapunovKind::Endemic) {
    if (!a.e_star)
      throw std::domain_error("endemic Lyapunov function needs R0 > 1 (R0 = " + to_string(a.r0) + ")");
    return {kind, (*a.e_star)[0].get_d(), (*a.e_star)[1].get_d()};
  }
  return {kind, a.e0[0].get_d(), 0.0};
}

LyapunovFunction lyapunov(const Params& p) {
  return lyapunov(p, analyze(p).regime == Regime::Supercritical ? LyapunovKind::Endemic
                                                                 : LyapunovKind::DiseaseFree);
}

std::vector<std::pair<double, double>> reconstruct_r(const Trajectory& traj, const Params& p,
                                                     double r_initial) {
  p.validate();
  if (r_initial < 0) throw std::invalid_argument("initial R must be nonnegative");
  const double mu = p.mu.get_d(), q = p.q.get_d();
  std::vector<std::pair<double, double>> out;
  if (traj.samples.empty()) return out;
  double r = r_initial;
  Vec2 prev = traj.plane_point(0);
  double t_prev = traj.samples[0].t;
  out.emplace_back(t_prev, r);
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const Vec2 cur = traj.plane_point(k);
    const double t = traj.samples[k].t;
    const double h = t - t_prev;
    if (h > 0) {
      const double slope = (cur[1] - prev[1]) / h;
      const double decay = std::exp(-mu * h);
      const double e = -std::expm1(-mu * h);  // 1 - exp(-mu h)
      const double ramp = (mu * h - e) / (mu * mu);
      r = r * decay + q * (prev[1] * e / mu + slope * ramp);
    }
    out.emplace_back(t, r);
    prev = cur;
    t_prev = t;
  }
  return out;
}

void PartialParams::merge_missing(const PartialParams& other) {
  if (!A) A = other.A;
  if (!beta) beta = other.beta;
  if (!mu) mu = other.mu;
  if (!q) q = other.q;
}

Params PartialParams::require() const {
  std::string missing;
  if (!A) missing += " A";
  if (!beta) missing += " beta";
  if (!mu) missing += " mu";
  if (!q) missing += " q";
  if (!missing.empty()) throw std::invalid_argument("missing parameter(s):" + missing);
  Params p{*A, *beta, *mu, *q};
  p.validate();
  return p;
}

namespace {

void assign(PartialParams& out, std::string_view key, const Rational& value) {
  if (key == "A") out.A = value;
  else if (key == "beta") out.beta = value;
  else if (key == "mu") out.mu = value;
  else if (key == "q") out.q = value;
  else throw std::invalid_argument("unknown parameter key '" + std::string(key) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

PartialParams parse_params(std::string_view text) {
  PartialParams out;
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json json;
    try {
      json = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed JSON parameters: ") + e.what());
    }
    if (!json.is_object()) throw std::invalid_argument("JSON parameters must be an object");
    for (const auto& [key, value] : json.items()) {
      if (value.is_string()) assign(out, key, parse_rational(value.get<std::string>()));
      else if (value.is_number()) assign(out, key, parse_rational(value.dump()));
      else throw std::invalid_argument("parameter '" + key + "' must be a string or number");
    }
    return out;
  }
  std::istringstream lines{std::string(body)};
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    std::string_view l = line;
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("line " + std::to_string(number) + ": expected key=value");
    assign(out, trim(l.substr(0, eq)), parse_rational(trim(l.substr(eq + 1))));
  }
  return out;
}

}  // namespace poincare::sir
