#include "poincare/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poincare {

PlanarField::PlanarField(Poly2 p, Poly2 q) : p_(std::move(p)), q_(std::move(q)) {
  q_ = q_.with_names(p_.names());
  degree_ = std::max(p_.degree(), q_.degree());
  jac_ = {{{diff(p_, 0), diff(p_, 1)}, {diff(q_, 0), diff(q_, 1)}}};
}

RatMat2 jacobian(const PlanarField& f, const RatVec2& at) {
  RatMat2 m;
  const auto& jp = f.jacobian_polys();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m[r][c] = jp[r][c].eval(at[0], at[1]);
  return m;
}

Mat2 jacobian(const PlanarField& f, const Vec2& at) {
  Mat2 m;
  const auto& jp = f.jacobian_polys();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m[r][c] = jp[r][c].eval(at[0], at[1]);
  return m;
}

Mat2 to_double(const RatMat2& m) {
  return {{{m[0][0].get_d(), m[0][1].get_d()}, {m[1][0].get_d(), m[1][1].get_d()}}};
}

namespace {

using Complex = std::complex<double>;
using CVec2 = std::array<Complex, 2>;

double frobenius(const Mat2& j) {
  return std::sqrt(j[0][0] * j[0][0] + j[0][1] * j[0][1] + j[1][0] * j[1][0] + j[1][1] * j[1][1]);
}

CVec2 normalized(CVec2 v) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  if (n == 0.0) return v;
  v[0] /= n;
  v[1] /= n;
  const double cutoff = 1e-14;
  const Complex lead = std::abs(v[0]) > cutoff ? v[0] : v[1];
  const Complex phase = std::conj(lead) / std::abs(lead);
  v[0] *= phase;
  v[1] *= phase;
  // Drop the roundoff imaginary part left on the leading component.
  if (std::abs(v[0]) > cutoff) v[0] = std::abs(v[0]);
  else v[1] = std::abs(v[1]);
  return v;
}

}  // namespace

EigenDecomposition eigen(const Mat2& j) {
  const double a = j[0][0], b = j[0][1], c = j[1][0], d = j[1][1];
  const double half = 0.5 * (a + d);
  const double det = a * d - b * c;
  const double h = 0.5 * (a - d);
  const double disc = h * h + b * c;
  const double scale = frobenius(j);

  std::array<Complex, 2> values;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    const double s = half + std::copysign(r, half);
    values[0] = s;
    values[1] = s != 0.0 ? det / s : 0.0;
  } else {
    const double r = std::sqrt(-disc);
    values[0] = Complex(half, r);
    values[1] = Complex(half, -r);
  }
  std::sort(values.begin(), values.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  EigenDecomposition out;
  const double tiny = 1e-13 * (1.0 + scale);
  const bool repeated = std::abs(values[0] - values[1]) <= 1e-12 * (1.0 + scale);

  auto null_vector = [&](const Complex& lam) -> std::optional<CVec2> {
    const Complex m00 = a - lam, m01 = b, m10 = c, m11 = d - lam;
    const double n0 = std::sqrt(std::norm(m00) + std::norm(m01));
    const double n1 = std::sqrt(std::norm(m10) + std::norm(m11));
    if (std::max(n0, n1) <= tiny) return std::nullopt;
    if (n0 >= n1) return normalized({m01, -m00});
    return normalized({m11, -m10});
  };

  if (repeated) {
    const Complex lam = 0.5 * (values[0] + values[1]);
    auto v = null_vector(lam);
    if (!v) {
      out.pairs[0] = {values[0], {1.0, 0.0}};
      out.pairs[1] = {values[1], {0.0, 1.0}};
      return out;
    }
    // Nilpotent J - lam: w = M^T v / |M|_F^2 solves M w = v.
    const Complex m00 = a - lam, m01 = b, m10 = c, m11 = d - lam;
    const double mf = std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
    const CVec2 w{(m00 * (*v)[0] + m10 * (*v)[1]) / mf, (m01 * (*v)[0] + m11 * (*v)[1]) / mf};
    out.pairs[0] = {values[0], *v};
    out.pairs[1] = {values[1], w};
    out.defective = true;
    return out;
  }
  for (int k = 0; k < 2; ++k) {
    auto v = null_vector(values[k]);
    out.pairs[k] = {values[k], v ? *v : CVec2{1.0, 0.0}};
  }
  return out;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Sink: return "sink";
    case Classification::Source: return "source";
    case Classification::Saddle: return "saddle";
    case Classification::CenterLinear: return "center-linear";
    case Classification::NonhyperbolicSemisimpleZero: return "nonhyperbolic-semisimple-zero";
    case Classification::NonhyperbolicOther: return "nonhyperbolic-other";
  }
  return "?";
}

double hyperbolicity_tolerance(const std::array<std::complex<double>, 2>& values) {
  const double spectral = std::max(std::abs(values[0]), std::abs(values[1]));
  return 1e-9 * (1.0 + spectral);
}

ClassifyResult classify(const std::array<std::complex<double>, 2>& values) {
  const double eps = hyperbolicity_tolerance(values);
  const double r0 = values[0].real(), r1 = values[1].real();
  const bool z0 = std::abs(r0) <= eps, z1 = std::abs(r1) <= eps;

  ClassifyResult out{};
  out.near_threshold = std::abs(r0) <= 1e3 * eps || std::abs(r1) <= 1e3 * eps;
  if (!z0 && !z1) {
    if (r0 < 0 && r1 < 0) out.type = Classification::Sink;
    else if (r0 > 0 && r1 > 0) out.type = Classification::Source;
    else out.type = Classification::Saddle;
  } else if (z0 && z1) {
    const bool oscillating = std::abs(values[0].imag()) > eps && std::abs(values[1].imag()) > eps;
    out.type = oscillating ? Classification::CenterLinear : Classification::NonhyperbolicOther;
  } else {
    const auto& zero = z0 ? values[0] : values[1];
    out.type = std::abs(zero.imag()) <= eps ? Classification::NonhyperbolicSemisimpleZero
                                            : Classification::NonhyperbolicOther;
  }
  return out;
}

namespace {

Equilibrium finish(const PlanarField& f, const Vec2& at, const Mat2& j) {
  Equilibrium e;
  e.location = at;
  e.jacobian = j;
  e.eigen = eigen(j);
  const auto c = classify({e.eigen.pairs[0].value, e.eigen.pairs[1].value});
  e.classification = c.type;
  e.near_threshold = c.near_threshold;
  e.hyperbolic = c.type == Classification::Sink || c.type == Classification::Source ||
                 c.type == Classification::Saddle;
  const Vec2 r = f.eval(at);
  e.residual = std::hypot(r[0], r[1]);
  return e;
}

}  // namespace

Equilibrium make_equilibrium(const PlanarField& f, const Vec2& at) {
  return finish(f, at, jacobian(f, at));
}

Equilibrium make_equilibrium(const PlanarField& f, const RatVec2& at) {
  Equilibrium e = finish(f, {at[0].get_d(), at[1].get_d()}, to_double(jacobian(f, at)));
  e.exact_location = at;
  return e;
}

double equilibrium_tolerance(const PlanarField& f) {
  return 1e-10 * (1.0 + f.coefficient_norm());
}

namespace {

std::optional<Vec2> newton(const PlanarField& f, Vec2 x, int max_iterations, double tol) {
  Vec2 r = f.eval(x);
  double res = std::hypot(r[0], r[1]);
  // Keeps polishing past tol: near a multiple root the residual is quadratic
  // in the distance, so tol alone leaves the iterate far from the root.
  for (int it = 0; it < max_iterations && res > 0; ++it) {
    const Mat2 j = jacobian(f, x);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (det == 0.0 || !std::isfinite(det)) break;
    const Vec2 step{(j[1][1] * r[0] - j[0][1] * r[1]) / det,
                    (-j[1][0] * r[0] + j[0][0] * r[1]) / det};
    double alpha = 1.0;
    Vec2 trial{};
    Vec2 tr{};
    double tres = 0.0;
    for (int k = 0; k <= 10; ++k, alpha *= 0.5) {
      trial = {x[0] - alpha * step[0], x[1] - alpha * step[1]};
      tr = f.eval(trial);
      tres = std::hypot(tr[0], tr[1]);
      if (tres < res) break;
    }
    if (!std::isfinite(tres) || std::abs(trial[0]) > 1e12 || std::abs(trial[1]) > 1e12)
      break;
    if (!(tres < res)) break;
    x = trial;
    r = tr;
    res = tres;
  }
  if (res < tol) return x;
  return std::nullopt;
}

}  // namespace

std::vector<Equilibrium> find_equilibria(const PlanarField& f, const Region& region,
                                         const EquilibriumSearch& search,
                                         std::span<const RatVec2> candidates) {
  if (!(region.s_max >= region.s_min) || !(region.i_max >= region.i_min))
    throw std::invalid_argument("find_equilibria: empty region");
  const double tol = equilibrium_tolerance(f);

  struct Found {
    Vec2 at;
    std::optional<RatVec2> exact;
    double residual;
  };
  std::vector<Found> found;

  for (const auto& c : candidates) {
    const RatVec2 r = f.eval(c);
    const Vec2 at{c[0].get_d(), c[1].get_d()};
    if (r[0] == 0 && r[1] == 0) {
      found.push_back({at, c, 0.0});
    } else if (auto x = newton(f, at, search.max_iterations, tol)) {
      const Vec2 v = f.eval(*x);
      found.push_back({*x, std::nullopt, std::hypot(v[0], v[1])});
    }
  }

  const int n = std::max(search.grid, 2);
  for (int gi = 0; gi < n; ++gi) {
    for (int gj = 0; gj < n; ++gj) {
      const Vec2 seed{region.s_min + (region.s_max - region.s_min) * gi / (n - 1),
                      region.i_min + (region.i_max - region.i_min) * gj / (n - 1)};
      if (auto x = newton(f, seed, search.max_iterations, tol)) {
        const Vec2 v = f.eval(*x);
        found.push_back({*x, std::nullopt, std::hypot(v[0], v[1])});
      }
    }
  }

  // Exact points first, then smallest residual, so duplicates keep the best.
  std::stable_sort(found.begin(), found.end(), [](const Found& x, const Found& y) {
    if (x.exact.has_value() != y.exact.has_value()) return x.exact.has_value();
    return x.residual < y.residual;
  });
  std::vector<Found> kept;
  const double slack = 1e-9 * (1.0 + std::max({std::abs(region.s_min), std::abs(region.s_max),
                                                std::abs(region.i_min), std::abs(region.i_max)}));
  for (const auto& c : found) {
    if (!region.contains(c.at, slack)) continue;
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Found& k) {
      return std::hypot(k.at[0] - c.at[0], k.at[1] - c.at[1]) < search.dedup_radius;
    });
    if (!duplicate) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [](const Found& x, const Found& y) { return x.at < y.at; });

  std::vector<Equilibrium> out;
  out.reserve(kept.size());
  for (const auto& k : kept)
    out.push_back(k.exact ? make_equilibrium(f, *k.exact) : make_equilibrium(f, k.at));
  return out;
}

}  // namespace poincare
