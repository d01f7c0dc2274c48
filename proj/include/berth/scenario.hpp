#pragma once

// Planning scenarios: ship, coefficients, port obstacles, boundary states,
// objective weights, bounds and optimizer settings. Files are JSON; quantities
// may be given as SI numbers or as {"value": v, "unit": "kn" | "deg" | ...}.

#include <filesystem>
#include <string>
#include <vector>

#include "berth/core.hpp"
#include "berth/dynamics.hpp"
#include "berth/geometry.hpp"
#include "berth/optimizer.hpp"

namespace berth {

struct Waypoint {
  double x0 = 0.0;
  double y0 = 0.0;
  double L_tol = 75.0;
  bool operator==(const Waypoint&) const = default;
};

/// Box limits on terminal time and actuator magnitudes.
struct BoundsSpec {
  double tf_min = 630.0;
  double tf_max = 2250.0;
  double delta_max = 35.0 * kPi / 180.0;
  double np_max = 2.08;
  double nbt_max = 4.24;
  double nst_max = 4.24;
  bool operator==(const BoundsSpec&) const = default;
};

/// Decision-vector bounds for m segments, ordered (t_f, delta.., np.., nbt.., nst..).
BoxBounds make_box_bounds(const BoundsSpec& spec, int m);

struct Scenario {
  std::string name;
  std::string note;
  Mode mode = Mode::kBerthing;
  ShipState x_int;
  ShipState x_des;
  ToleranceVector tol;
  WeightConfig weights;
  Environment env;
  ObstacleSet obstacles;
  DomainConfig domain;
  std::vector<Waypoint> waypoints;
  BoundsSpec bounds;
  int m = 25;
  double t_c = 90.0;
  double dt = 1.0;
  ShipModel model;
  std::string coefficients_ref = "builtin:default";
  OptimizerConfig optimizer;

  BoxBounds box_bounds() const { return make_box_bounds(bounds, m); }
  std::size_t dimension() const { return 4 * static_cast<std::size_t>(m) + 1; }
  bool operator==(const Scenario& o) const;
};

/// Validation problem with a field path such as "obstacles[2]".
struct Diagnostic {
  std::string path;
  std::string message;
};

/// Runs every validation rule and collects all violations.
std::vector<Diagnostic> check_scenario(const Scenario& s);

/// Throws Error carrying the first diagnostic.
void validate(const Scenario& s);

HydroCoefficients parse_coefficients(const std::string& json_text);
std::string coefficients_to_json(const HydroCoefficients& c);

/// Resolves "builtin:<name>" or a path relative to base_dir.
HydroCoefficients load_coefficients(const std::string& ref, const std::filesystem::path& base_dir);

/// Parses a scenario; throws Error with a field path on any problem.
Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir);

/// Same as parse_scenario but does not run the final validation.
Scenario parse_scenario_unchecked(const std::string& json_text,
                                  const std::filesystem::path& base_dir);

Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);

const std::vector<std::string>& builtin_names();
/// Throws Error listing valid names for an unknown name.
Scenario builtin(const std::string& name);
bool is_builtin(const std::string& name);
/// JSON text of a built-in scenario; throws like builtin().
const std::string& builtin_source(const std::string& name);

/// Built-in name or file path.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace berth
