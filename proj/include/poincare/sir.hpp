#pragma once

// SIR endemic model with births A and natural mortality mu:
//   S' = A - beta S I - mu S
//   I' = beta S I - (q + mu) I
//   R' = q I - mu R      (decoupled; reconstructed from I(t) afterwards)

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poincare/field.hpp"
#include "poincare/flow.hpp"

namespace poincare::sir {

struct Params {
  Rational A;
  Rational beta;
  Rational mu;
  Rational q;

  /// Throws std::invalid_argument unless all four are strictly positive.
  void validate() const;
  ParamTable table() const;
};

enum class Regime { Subcritical, Critical, Supercritical };
std::string_view to_string(Regime r);

struct Analysis {
  Rational r0;
  Regime regime;
  RatVec2 e0;
  std::optional<RatVec2> e_star;
  /// (q + mu)(R0 - 1): exponential rate of I(t) when R0 < 1.
  std::optional<Rational> predicted_rate;
  /// A beta^2 / mu^2: slope of 1/I(t) when R0 = 1.
  std::optional<Rational> predicted_slope;
};

PlanarField make_field(const Params& p);
Rational basic_reproduction_number(const Params& p);
Analysis analyze(const Params& p);

/// Endemic V when R0 > 1, disease-free V otherwise.
LyapunovFunction lyapunov(const Params& p);
/// Throws std::domain_error if `kind` is Endemic and R0 <= 1.
LyapunovFunction lyapunov(const Params& p, LyapunovKind kind);

/// R(t) along the sampled I(t), with I linear between samples and each
/// interval integrated exactly.
std::vector<std::pair<double, double>> reconstruct_r(const Trajectory& traj, const Params& p,
                                                     double r_initial);

/// Reads "key=value" lines or a JSON object with keys A, beta, mu, q (values
/// as rational strings or numbers). Missing keys stay unset in the result.
struct PartialParams {
  std::optional<Rational> A, beta, mu, q;
  /// Fills from another set where this one is unset.
  void merge_missing(const PartialParams& other);
  bool complete() const { return A && beta && mu && q; }
  bool any() const { return A || beta || mu || q; }
  Params require() const;
};
PartialParams parse_params(std::string_view text);

}  // namespace poincare::sir
