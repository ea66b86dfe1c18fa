#include "poincare/compact.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace poincare {

ChartField to_chart(const PlanarField& f, ChartId chart) {
  if (chart == ChartId::PLANE) throw std::invalid_argument("to_chart: chart must be U1 or U2");
  if (f.is_zero()) throw std::invalid_argument("to_chart: zero vector field");
  // A constant field still needs one power of lambda to stay polynomial.
  const int d = std::max(f.degree(), 1);
  const Poly2 p = compactify_numerator(f.p(), d, chart);
  const Poly2 q = compactify_numerator(f.q(), d, chart);
  const Poly2 lam = Poly2::variable(0, kChartNames);
  const Poly2 x = Poly2::variable(1, kChartNames);

  // U2: lambda = 1/I, x = S/I, so lambda' = -lambda^2 Q and
  // x' = lambda P - x lambda Q; multiplying by lambda^(d-1) gives the
  // lambda^d-cleared numerators below. U1 swaps the roles of P and Q.
  const Poly2& along = chart == ChartId::U2 ? q : p;
  const Poly2& across = chart == ChartId::U2 ? p : q;
  ChartField cf{chart, -(lam * along), across - x * along, d - 1, f.degree()};
  return cf;
}

bool infinity_is_degenerate(const ChartField& cf) {
  for (const auto& [e, c] : cf.x_dot.terms())
    if (e.first == 0) return false;
  return true;
}

std::vector<double> nonnegative_real_roots(std::span<const double> coeffs) {
  std::vector<double> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::vector<double> roots;
  if (c.size() <= 1) return roots;

  std::size_t low = 0;
  while (c[low] == 0.0) ++low;
  if (low > 0) {
    roots.push_back(0.0);
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  }
  const int n = static_cast<int>(c.size()) - 1;
  auto eval = [&](double x) {
    double acc = 0.0;
    for (int k = n; k >= 0; --k) acc = acc * x + c[k];
    return acc;
  };
  auto deriv = [&](double x) {
    double acc = 0.0;
    for (int k = n; k >= 1; --k) acc = acc * x + k * c[k];
    return acc;
  };
  double coeff_norm = 0.0;
  for (double v : c) coeff_norm += std::abs(v);

  std::vector<std::complex<double>> candidates;
  if (n == 1) {
    candidates.emplace_back(-c[0] / c[1]);
  } else if (n > 1) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
    for (int k = 0; k < n; ++k) companion(k, n - 1) = -c[k] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    for (int k = 0; k < n; ++k) candidates.push_back(solver.eigenvalues()(k));
  }

  for (const auto& z : candidates) {
    const double mag = 1.0 + std::abs(z);
    bool real = std::abs(z.imag()) <= 1e-9 * mag;
    if (!real && std::abs(z.imag()) <= 1e-6 * mag) {
      // Multiple roots split into near-real complex pairs.
      real = std::abs(eval(z.real())) <= 1e-12 * coeff_norm * std::pow(mag, n);
    }
    if (!real) continue;
    double x = z.real();
    for (int it = 0; it < 5; ++it) {
      const double dp = deriv(x);
      if (dp == 0.0) break;
      const double next = x - eval(x) / dp;
      if (!std::isfinite(next) || std::abs(eval(next)) >= std::abs(eval(x))) break;
      x = next;
    }
    if (x < -1e-12) continue;
    if (x < 0.0) x = 0.0;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots)
    if (unique.empty() || std::abs(r - unique.back()) > 1e-7 * (1.0 + std::abs(r)))
      unique.push_back(r);
  return unique;
}

std::vector<Equilibrium> infinity_equilibria(const ChartField& cf) {
  std::vector<Equilibrium> out;
  if (infinity_is_degenerate(cf)) return out;
  int top = 0;
  for (const auto& [e, c] : cf.x_dot.terms())
    if (e.first == 0) top = std::max(top, e.second);
  std::vector<double> coeffs(static_cast<std::size_t>(top) + 1, 0.0);
  bool zero_root = true;
  for (const auto& [e, c] : cf.x_dot.terms()) {
    if (e.first != 0) continue;
    coeffs[static_cast<std::size_t>(e.second)] = c.get_d();
    if (e.second == 0) zero_root = false;
  }
  const PlanarField field = cf.as_field();
  for (double root : nonnegative_real_roots(coeffs)) {
    if (root == 0.0 && zero_root) out.push_back(make_equilibrium(field, RatVec2{0, 0}));
    else out.push_back(make_equilibrium(field, Vec2{0.0, root}));
  }
  return out;
}

DiskPoint plane_to_disk(double s, double i) {
  const double delta = std::hypot(std::hypot(s, i), 1.0);
  return {s / delta, i / delta};
}

DiskPoint chart_to_disk(const Vec2& at, ChartId chart) {
  const double lam = at[0], x = at[1];
  switch (chart) {
    case ChartId::PLANE: return plane_to_disk(at[0], at[1]);
    case ChartId::U1: {
      const double n = std::hypot(std::hypot(1.0, x), lam);
      return {1.0 / n, x / n};
    }
    case ChartId::U2: {
      const double n = std::hypot(std::hypot(x, 1.0), lam);
      return {x / n, 1.0 / n};
    }
  }
  return {};
}

Vec2 plane_to_chart(const Vec2& si, ChartId chart) {
  switch (chart) {
    case ChartId::PLANE: return si;
    case ChartId::U1:
      if (!(si[0] > 0)) throw std::domain_error("chart U1 needs S > 0");
      return {1.0 / si[0], si[1] / si[0]};
    case ChartId::U2:
      if (!(si[1] > 0)) throw std::domain_error("chart U2 needs I > 0");
      return {1.0 / si[1], si[0] / si[1]};
  }
  return si;
}

RatVec2 plane_to_chart(const RatVec2& si, ChartId chart) {
  switch (chart) {
    case ChartId::PLANE: return si;
    case ChartId::U1:
      if (si[0] <= 0) throw std::domain_error("chart U1 needs S > 0");
      return {Rational(1 / si[0]), Rational(si[1] / si[0])};
    case ChartId::U2:
      if (si[1] <= 0) throw std::domain_error("chart U2 needs I > 0");
      return {Rational(1 / si[1]), Rational(si[0] / si[1])};
  }
  return si;
}

Vec2 chart_to_plane(const Vec2& at, ChartId chart) {
  switch (chart) {
    case ChartId::PLANE: return at;
    case ChartId::U1: return {1.0 / at[0], at[1] / at[0]};
    case ChartId::U2: return {at[1] / at[0], 1.0 / at[0]};
  }
  return at;
}

RatMat2 chart_change_jacobian(const RatVec2& si, ChartId chart) {
  const Rational& s = si[0];
  const Rational& i = si[1];
  switch (chart) {
    case ChartId::U1:  // (1/S, I/S)
      return {{{Rational(-1 / (s * s)), Rational(0)}, {Rational(-i / (s * s)), Rational(1 / s)}}};
    case ChartId::U2:  // (1/I, S/I)
      return {{{Rational(0), Rational(-1 / (i * i))}, {Rational(1 / i), Rational(-s / (i * i))}}};
    case ChartId::PLANE: break;
  }
  return {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
}

}  // namespace poincare
