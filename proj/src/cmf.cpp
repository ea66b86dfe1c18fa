#include "poincare/cmf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace poincare {

std::string_view to_string(CmfVerdict v) {
  switch (v) {
    case CmfVerdict::AttractingSide: return "attracting-side";
    case CmfVerdict::RepellingSide: return "repelling-side";
    case CmfVerdict::DegenerateToOrder: return "degenerate-to-order-K";
  }
  return "?";
}

std::string_view to_string(FlowDirection d) {
  switch (d) {
    case FlowDirection::TowardEquilibrium: return "toward-equilibrium";
    case FlowDirection::AwayFromEquilibrium: return "away-from-equilibrium";
    case FlowDirection::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

Rational coeff_at(const Series& s, int k) {
  return k >= 0 && k < static_cast<int>(s.size()) ? s[static_cast<std::size_t>(k)] : Rational(0);
}

Series truncated(Series s, int order) {
  s.resize(static_cast<std::size_t>(order) + 1, Rational(0));
  return s;
}

Series derivative(const Series& s) {
  Series d(s.size() > 1 ? s.size() - 1 : 1, Rational(0));
  for (std::size_t k = 1; k < s.size(); ++k) d[k - 1] = s[k] * static_cast<long>(k);
  return d;
}

/// s(t(y)) for a series t without constant term.
Series series_substitute(const Series& s, const Series& t, int order) {
  Series acc(static_cast<std::size_t>(order) + 1, Rational(0));
  for (int k = static_cast<int>(s.size()) - 1; k >= 0; --k) {
    acc = series_mul(acc, t, order);
    acc[0] += s[static_cast<std::size_t>(k)];
  }
  return acc;
}

/// Coordinate series y(t) = a1 t + a2 t^2 + ... inverted to t(y).
Series series_invert(const Series& y, int order) {
  const Rational a1 = coeff_at(y, 1);
  if (a1 == 0) throw std::logic_error("series_invert: zero linear coefficient");
  Series t(static_cast<std::size_t>(order) + 1, Rational(0));
  t[1] = 1 / a1;
  for (int n = 2; n <= order; ++n) {
    const Series comp = series_substitute(y, t, order);
    t[static_cast<std::size_t>(n)] -= comp[static_cast<std::size_t>(n)] / a1;
  }
  return t;
}

/// Null vector of the rank-one matrix m taken from its first nonzero row;
/// axis-aligned vectors are scaled to unit length.
RatVec2 null_vector(const RatMat2& m) {
  const auto& row = (m[0][0] != 0 || m[0][1] != 0) ? m[0] : m[1];
  RatVec2 v{row[1], Rational(-row[0])};
  if (v[0] == 0) v[1] = 1;
  else if (v[1] == 0) v[0] = 1;
  return v;
}

CmfReduction reduce_core(const PlanarField& f, const RatVec2& at, int order, bool allow_unstable) {
  if (order < 2 || order > 10)
    throw std::invalid_argument("center-manifold order must lie in [2, 10]");
  const RatVec2 residual = f.eval(at);
  if (residual[0] != 0 || residual[1] != 0)
    throw std::invalid_argument("center-manifold reduction requested away from an equilibrium");

  const RatMat2 j = jacobian(f, at);
  const Rational trace = j[0][0] + j[1][1];
  const Rational det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  if (det != 0)
    throw std::domain_error("no zero eigenvalue: det J = " + to_string(det));
  if (trace == 0)
    throw std::domain_error("zero eigenvalue is not simple (J nilpotent or zero)");
  if (trace > 0 && !allow_unstable)
    throw std::domain_error("spectrum is {+, 0}; center-manifold reduction expects {-, 0}");

  CmfReduction r;
  r.equilibrium = at;
  r.order = order;
  r.hyperbolic_eigenvalue = trace;
  r.names = f.names();

  RatMat2 shifted = j;
  shifted[0][0] -= trace;
  shifted[1][1] -= trace;
  const RatVec2 vs = null_vector(shifted);
  const RatVec2 vc = null_vector(j);
  r.eigenbasis = {{{vs[0], vc[0]}, {vs[1], vc[1]}}};
  const auto& t = r.eigenbasis;
  const Rational tdet = t[0][0] * t[1][1] - t[0][1] * t[1][0];
  const RatMat2 tinv{{{Rational(t[1][1] / tdet), Rational(-t[0][1] / tdet)},
                      {Rational(-t[1][0] / tdet), Rational(t[0][0] / tdet)}}};

  const VarNames eig_names{"u", "v"};
  const Poly2 u = Poly2::variable(0, eig_names);
  const Poly2 v = Poly2::variable(1, eig_names);
  const Poly2 a = Poly2::constant(at[0], eig_names) + u * t[0][0] + v * t[0][1];
  const Poly2 b = Poly2::constant(at[1], eig_names) + u * t[1][0] + v * t[1][1];
  const Poly2 fp = compose(f.p(), a, b);
  const Poly2 fq = compose(f.q(), a, b);
  r.u_dot = fp * tinv[0][0] + fq * tinv[0][1];
  r.v_dot = fp * tinv[1][0] + fq * tinv[1][1];
  if (r.u_dot.coeff(1, 0) != trace || r.u_dot.coeff(0, 1) != 0 || r.v_dot.coeff(1, 0) != 0 ||
      r.v_dot.coeff(0, 1) != 0)
    throw std::logic_error("eigenbasis change failed to diagonalize the linear part");

  // Coefficient matching: at order k the unknown h_k only enters through the
  // linear term trace * u.
  const Series id{Rational(0), Rational(1)};
  r.h.assign(static_cast<std::size_t>(order) + 1, Rational(0));
  for (int k = 2; k <= order; ++k) {
    const Series lhs = series_compose(r.u_dot, r.h, id, order);
    const Series rhs = series_mul(derivative(r.h), series_compose(r.v_dot, r.h, id, order), order);
    const Rational res = coeff_at(lhs, k) - coeff_at(rhs, k);
    r.h[static_cast<std::size_t>(k)] = -res / trace;
  }
  r.reduced = truncated(series_compose(r.v_dot, r.h, id, order), order);

  // Back to original variables, parametrized by the coordinate along which
  // the hyperbolic eigenvector has the smaller component.
  const int k = [&] {
    const Rational s0 = abs(vs[0]), s1 = abs(vs[1]);
    if (vc[0] == 0) return 1;
    if (vc[1] == 0) return 0;
    return s0 < s1 ? 0 : 1;
  }();
  r.parameter_index = k;
  Series coord[2];
  for (int row = 0; row < 2; ++row) {
    coord[row].assign(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int p = 0; p <= order; ++p)
      coord[row][static_cast<std::size_t>(p)] = t[row][0] * coeff_at(r.h, p) + t[row][1] * coeff_at(id, p);
  }
  const Series param_inverse = series_invert(coord[k], order);
  r.graph = series_substitute(coord[1 - k], param_inverse, order);
  r.reduced_original =
      series_substitute(series_mul(derivative(coord[k]), r.reduced, order), param_inverse, order);

  if (trace > 0) {
    r.verdict = CmfVerdict::RepellingSide;
  } else {
    r.verdict = CmfVerdict::DegenerateToOrder;
    for (int m = 2; m <= order; ++m) {
      const Rational c = coeff_at(r.reduced_original, m);
      if (c == 0) continue;
      r.verdict = c < 0 ? CmfVerdict::AttractingSide : CmfVerdict::RepellingSide;
      break;
    }
  }
  return r;
}

}  // namespace

Rational CmfReduction::h_coeff(int k) const { return coeff_at(h, k); }
Rational CmfReduction::reduced_coeff(int k) const { return coeff_at(reduced, k); }

Series series_mul(const Series& a, const Series& b, int order) {
  Series out(static_cast<std::size_t>(order) + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

Series series_compose(const Poly2& p, const Series& a, const Series& b, int order) {
  Series out(static_cast<std::size_t>(order) + 1, Rational(0));
  std::vector<Series> pa{Series{Rational(1)}};
  std::vector<Series> pb{Series{Rational(1)}};
  for (const auto& [e, c] : p.terms()) {
    while (static_cast<int>(pa.size()) <= e.first) pa.push_back(series_mul(pa.back(), a, order));
    while (static_cast<int>(pb.size()) <= e.second) pb.push_back(series_mul(pb.back(), b, order));
    const Series term = series_mul(pa[static_cast<std::size_t>(e.first)],
                                   pb[static_cast<std::size_t>(e.second)], order);
    for (std::size_t k = 0; k < term.size(); ++k) out[k] += c * term[k];
  }
  return out;
}

CmfReduction reduce(const PlanarField& f, const RatVec2& at, int order) {
  return reduce_core(f, at, order, false);
}

CmfReduction reduce_chart_infinity(const ChartField& cf, int order, const Rational& x_at) {
  return reduce_core(cf.as_field(), RatVec2{Rational(0), x_at}, order, true);
}

FlowDirection verdict_to_flow_direction(const CmfReduction& r, int side) {
  if (side == 0) throw std::invalid_argument("side must be +1 or -1");
  const int s = side > 0 ? 1 : -1;
  for (int m = 2; m <= r.order; ++m) {
    const Rational c = coeff_at(r.reduced_original, m);
    if (c == 0) continue;
    // Sign of w' on the side s, relative to s.
    const int drift = sgn(c) * ((m % 2 == 0) ? 1 : s) * s;
    const bool toward = drift < 0;
    if (r.hyperbolic_eigenvalue > 0)
      return toward ? FlowDirection::Undetermined : FlowDirection::AwayFromEquilibrium;
    return toward ? FlowDirection::TowardEquilibrium : FlowDirection::AwayFromEquilibrium;
  }
  return FlowDirection::Undetermined;
}

Series invariance_residual(const CmfReduction& r) {
  const Series id{Rational(0), Rational(1)};
  const Series lhs = series_compose(r.u_dot, r.h, id, r.order);
  const Series rhs = series_mul(derivative(r.h), series_compose(r.v_dot, r.h, id, r.order), r.order);
  Series out(static_cast<std::size_t>(r.order) + 1, Rational(0));
  for (int k = 0; k <= r.order; ++k)
    out[static_cast<std::size_t>(k)] = coeff_at(lhs, k) - coeff_at(rhs, k);
  return out;
}

namespace {

std::string power_text(const std::string& var, int k) {
  if (k == 0) return "";
  return k == 1 ? var : var + "^" + std::to_string(k);
}

std::string series_text(const Series& s, const std::string& var, int order, int first) {
  std::ostringstream out;
  bool any = false;
  for (int k = first; k <= order; ++k) {
    const Rational c = coeff_at(s, k);
    if (c == 0) continue;
    const Rational mag = abs(c);
    out << (any ? (c < 0 ? " - " : " + ") : (c < 0 ? "-" : ""));
    any = true;
    if (k == 0) out << mag.get_str();
    else if (mag == 1) out << power_text(var, k);
    else out << mag.get_str() << '*' << power_text(var, k);
  }
  if (!any) out << '0';
  out << " + O(" << power_text(var, order + 1) << ')';
  return out.str();
}

std::string shifted_name(const CmfReduction& r, int index) {
  const auto& name = r.names[static_cast<std::size_t>(index)];
  const Rational& at = r.equilibrium[static_cast<std::size_t>(index)];
  if (at == 0) return name;
  return "(" + name + (at < 0 ? " + " : " - ") + Rational(abs(at)).get_str() + ")";
}

}  // namespace

std::string reduced_dynamics_text(const CmfReduction& r, int through) {
  const int k = r.parameter_index;
  const int upto = through > 0 ? std::min(through, r.order) : r.order;
  return "d" + r.names[static_cast<std::size_t>(k)] + "/dt = " +
         series_text(r.reduced_original, shifted_name(r, k), upto, 2);
}

std::string graph_text(const CmfReduction& r, int through) {
  const int k = r.parameter_index;
  Series g = r.graph;
  g[0] = r.equilibrium[static_cast<std::size_t>(1 - k)];
  const int upto = through > 0 ? std::min(through, r.order) : r.order;
  return r.names[static_cast<std::size_t>(1 - k)] + " = " +
         series_text(g, shifted_name(r, k), upto, 0);
}

}  // namespace poincare
