#pragma once

// Machine-readable reports and Poincare-disk portraits.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "poincare/cmf.hpp"
#include "poincare/compact.hpp"
#include "poincare/field.hpp"
#include "poincare/flow.hpp"
#include "poincare/sir.hpp"

namespace poincare {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

Json to_json(const Poly2& p);
Json to_json(const Equilibrium& e);
Json to_json(const ChartField& cf);
Json to_json(const CmfReduction& r);
Json to_json(const LyapunovReport& r);
Json to_json(const DecayFit& fit);
Json trajectory_json(const Trajectory& traj);

/// Direction of the flow near an equilibrium on the line at infinity, seen
/// from lambda > 0: the transverse eigenvalue when it is nonzero, otherwise
/// the center-manifold reduction (stored in `reduction` when computed).
FlowDirection infinity_direction(const ChartField& cf, const Equilibrium& e,
                                 std::optional<CmfReduction>* reduction = nullptr,
                                 int order = kDefaultCmfOrder);

/// A field to analyze: either the SIR model or a raw polynomial pair.
struct FieldSource {
  PlanarField field;
  std::optional<sir::Params> sir;

  static FieldSource from_sir(const sir::Params& p);
  static FieldSource from_polys(const Poly2& p, const Poly2& q);
};

struct AnalyzeOptions {
  std::optional<Region> region;
  int cmf_order = kDefaultCmfOrder;
};

Json analyze_report(const FieldSource& source, const AnalyzeOptions& options = {});
Json chart_report(const FieldSource& source);

struct AsymptoticsResult {
  Json report;
  bool within_tolerance;
};

/// Integrates from `seed` and fits the decay of I(t). Throws
/// std::domain_error in the supercritical regime.
AsymptoticsResult asymptotics_report(const sir::Params& p, const Vec2& seed,
                                     std::optional<double> t_max = std::nullopt);

struct PortraitStyle {
  double disk_radius_px = 300.0;
  double margin_px = 24.0;
  double arrow_spacing = 0.25;  // disk units of arc length
  std::string converged_color = "#1f5fa8";
  std::string left_region_color = "#c0392b";
  std::string exhausted_color = "#7f7f7f";
  std::string underflow_color = "#e67e22";
};

struct PortraitSpec {
  FieldSource source;
  std::vector<Vec2> seeds;
  double t_max = 500.0;
  double tol = 1e-9;
  PortraitStyle style;
};

/// Seeds on the quarter circle of radius r in the open first quadrant.
std::vector<Vec2> ring_seeds(int n, double r);

struct Portrait {
  std::string svg;
  Json sidecar;
  std::vector<Trajectory> trajectories;
};

/// Throws std::invalid_argument for seeds outside the closed first quadrant.
Portrait render_portrait(const PortraitSpec& spec);

}  // namespace poincare
