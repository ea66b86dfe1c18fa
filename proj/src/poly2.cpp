#include "poincare/poly2.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace poincare {

std::string_view to_string(ChartId chart) {
  switch (chart) {
    case ChartId::PLANE: return "PLANE";
    case ChartId::U1: return "U1";
    case ChartId::U2: return "U2";
  }
  return "?";
}

ChartId parse_chart(std::string_view text) {
  if (text == "PLANE" || text == "plane") return ChartId::PLANE;
  if (text == "U1" || text == "u1") return ChartId::U1;
  if (text == "U2" || text == "u2") return ChartId::U2;
  if (text == "V1" || text == "V2" || text == "V3" || text == "v1" || text == "v2" || text == "v3")
    throw std::invalid_argument("chart " + std::string(text) +
                                " lies on the lower hemisphere side and is not supported");
  throw std::invalid_argument("unknown chart '" + std::string(text) + "'");
}

Poly2::Poly2(Terms terms, VarNames names) : names_(std::move(names)) {
  for (auto& [e, c] : terms) {
    if (e.first < 0 || e.second < 0) throw std::invalid_argument("negative exponent");
    if (c != 0) terms_.emplace(e, c);
  }
}

Poly2 Poly2::constant(const Rational& c, VarNames names) {
  return monomial(c, 0, 0, std::move(names));
}

Poly2 Poly2::variable(int index, VarNames names) {
  if (index != 0 && index != 1) throw std::invalid_argument("variable index must be 0 or 1");
  return monomial(1, index == 0 ? 1 : 0, index == 1 ? 1 : 0, std::move(names));
}

Poly2 Poly2::monomial(const Rational& c, int i, int j, VarNames names) {
  Poly2 p(std::move(names));
  if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
  p.add_term({i, j}, c);
  return p;
}

Poly2 Poly2::with_names(VarNames names) const {
  Poly2 p = *this;
  p.names_ = std::move(names);
  return p;
}

Rational Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly2::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

double Poly2::l1_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c.get_d());
  return s;
}

void Poly2::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly2& Poly2::operator+=(const Poly2& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly2& Poly2::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly2 Poly2::operator-() const {
  Poly2 p = *this;
  for (auto& [e, v] : p.terms_) v = -v;
  return p;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r(a.names_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    }
  }
  return r;
}

namespace {

// Horner in the first variable over rows of fixed i, each row Horner in the
// second variable. Terms are sorted by (i, j), so rows are contiguous.
template <typename T, typename Convert>
T horner_eval(const Poly2::Terms& terms, const T& a, const T& b, Convert convert) {
  if (terms.empty()) return T(0);
  std::vector<std::pair<int, T>> rows;  // (i, row value)
  auto it = terms.begin();
  while (it != terms.end()) {
    const int i = it->first.first;
    auto row_end = it;
    while (row_end != terms.end() && row_end->first.first == i) ++row_end;
    // Walk the row backwards from its highest j.
    T acc(0);
    int current = std::prev(row_end)->first.second;
    for (auto r = std::prev(row_end);; --r) {
      const int j = r->first.second;
      while (current > j) {
        acc = acc * b;
        --current;
      }
      acc = acc + convert(r->second);
      if (r == it) break;
    }
    while (current > 0) {
      acc = acc * b;
      --current;
    }
    rows.emplace_back(i, acc);
    it = row_end;
  }
  T acc(0);
  int current = rows.back().first;
  for (auto r = rows.rbegin(); r != rows.rend(); ++r) {
    while (current > r->first) {
      acc = acc * a;
      --current;
    }
    acc = acc + r->second;
  }
  while (current > 0) {
    acc = acc * a;
    --current;
  }
  return acc;
}

}  // namespace

Rational Poly2::eval(const Rational& a, const Rational& b) const {
  return horner_eval<Rational>(terms_, a, b, [](const Rational& c) { return c; });
}

double Poly2::eval(double a, double b) const {
  return horner_eval<double>(terms_, a, b, [](const Rational& c) { return c.get_d(); });
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.first + x.first.second;
    const int dy = y.first.first + y.first.second;
    if (dx != dy) return dx > dy;
    return x.first.first > y.first.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    const bool unit = mag == 1;
    if (!unit || (e.first == 0 && e.second == 0)) factors.push_back(mag.get_str());
    for (int v = 0; v < 2; ++v) {
      const int k = v == 0 ? e.first : e.second;
      if (k == 0) continue;
      factors.push_back(k == 1 ? names_[v] : names_[v] + "^" + std::to_string(k));
    }
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (f) out << '*';
      out << factors[f];
    }
  }
  return out.str();
}

Poly2 add(const Poly2& a, const Poly2& b) { return a + b; }
Poly2 mul(const Poly2& a, const Poly2& b) { return a * b; }

Poly2 pow(const Poly2& p, unsigned n) {
  Poly2 result = Poly2::constant(1, p.names());
  Poly2 base = p;
  while (n) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

Poly2 diff(const Poly2& p, int var) {
  if (var != 0 && var != 1) throw std::invalid_argument("diff: variable index must be 0 or 1");
  Poly2::Terms out;
  for (const auto& [e, c] : p.terms()) {
    const int k = var == 0 ? e.first : e.second;
    if (k == 0) continue;
    Poly2::Exponent d = e;
    (var == 0 ? d.first : d.second) -= 1;
    out.emplace(d, c * k);
  }
  return Poly2(std::move(out), p.names());
}

Poly2 compose(const Poly2& p, const Poly2& a, const Poly2& b) {
  Poly2 result(a.names());
  if (p.is_zero()) return result;
  // Cache powers; exponents in small fields are small.
  std::vector<Poly2> pa{Poly2::constant(1, a.names())};
  std::vector<Poly2> pb{Poly2::constant(1, a.names())};
  for (const auto& [e, c] : p.terms()) {
    while (static_cast<int>(pa.size()) <= e.first) pa.push_back(pa.back() * a);
    while (static_cast<int>(pb.size()) <= e.second) pb.push_back(pb.back() * b);
    result += (pa[e.first] * pb[e.second]) * c;
  }
  return result;
}

Poly2 compactify_numerator(const Poly2& p, int d, ChartId chart) {
  if (chart == ChartId::PLANE)
    throw std::invalid_argument("compactify_numerator: chart must be U1 or U2");
  if (!p.is_zero() && d < p.degree())
    throw std::invalid_argument("compactify_numerator: d = " + std::to_string(d) +
                                " is below the polynomial degree " +
                                std::to_string(p.degree()));
  Poly2::Terms out;
  for (const auto& [e, c] : p.terms()) {
    const auto [i, j] = e;
    const int lam = d - i - j;
    const int x = chart == ChartId::U2 ? i : j;
    out.emplace(Poly2::Exponent{lam, x}, c);
  }
  return Poly2(std::move(out), kChartNames);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarNames& names, const ParamTable& params)
      : text_(text), names_(names), params_(params) {}

  Poly2 parse() {
    Poly2 p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos_) +
                                " in '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly2 expression() {
    skip_space();
    Poly2 acc(names_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Poly2 t = term();
    acc += negate ? -t : t;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Poly2 term() {
    Poly2 acc = power();
    for (;;) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Poly2 divisor = power();
        if (divisor.is_zero() || divisor.degree() != 0) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc *= Rational(1) / divisor.coeff(0, 0);
      } else {
        break;
      }
    }
    return acc;
  }

  Poly2 power() {
    Poly2 base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      const auto digits = text_.substr(start, pos_ - start);
      if (digits.size() > 3) fail("exponent too large");
      base = pow(base, static_cast<unsigned>(std::stoul(std::string(digits))));
    }
    return base;
  }

  Poly2 primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly2 inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Poly2 number() {
    const std::size_t start = pos_;
    auto digit_at = [&](std::size_t k) {
      return k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]));
    };
    while (digit_at(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (digit_at(pos_)) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (digit_at(k)) {
        pos_ = k;
        while (digit_at(pos_)) ++pos_;
      }
    }
    try {
      return Poly2::constant(parse_rational(text_.substr(start, pos_ - start)), names_);
    } catch (const std::invalid_argument&) {
      pos_ = start;
      fail("bad number");
    }
  }

  Poly2 identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const auto name = text_.substr(start, pos_ - start);
    if (name == names_[0]) return Poly2::variable(0, names_);
    if (name == names_[1]) return Poly2::variable(1, names_);
    if (auto it = params_.find(name); it != params_.end())
      return Poly2::constant(it->second, names_);
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  const VarNames& names_;
  const ParamTable& params_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly2 parse_poly(std::string_view text, const VarNames& names, const ParamTable& params) {
  return Parser(text, names, params).parse();
}

}  // namespace poincare
