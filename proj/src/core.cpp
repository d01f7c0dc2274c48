#include "berth/core.hpp"

#include <algorithm>
#include <cmath>

namespace berth {

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) throw Error("wrap_angle: non-finite angle");
  double r = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double knots_to_mps(double knots) { return knots * kKnot; }
double mps_to_knots(double mps) { return mps / kKnot; }
double deg_to_rad(double deg) { return deg * kPi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

double berthing_speed_tolerance(double gross_tonnage) {
  if (!(gross_tonnage > 0.0)) throw Error("gross tonnage must be positive");
  return 0.279 * std::pow(gross_tonnage, -0.114);
}

bool ShipState::is_finite() const {
  for (double v : to_array())
    if (!std::isfinite(v)) return false;
  return true;
}

ShipState make_state(double x0, double u, double y0, double vm, double psi, double r) {
  ShipState s{x0, u, y0, vm, psi, r};
  if (!s.is_finite()) throw Error("state has non-finite components");
  s.psi = wrap_angle(psi);
  return s;
}

const ControlInput& ControlSchedule::at(double t) const {
  if (segments.empty()) throw Error("control schedule has no segments");
  const auto last = segments.size() - 1;
  if (t <= 0.0) return segments.front();
  const auto idx = static_cast<std::size_t>(std::floor(t / segment_duration));
  return segments[std::min(idx, last)];
}

WindCondition make_wind(double gamma_T, double U_T) {
  if (!std::isfinite(gamma_T) || !std::isfinite(U_T)) throw Error("wind: non-finite value");
  if (U_T < 0.0) throw Error("wind speed must be non-negative", "wind.U_T");
  double g = std::fmod(gamma_T, 2.0 * kPi);
  if (g < 0.0) g += 2.0 * kPi;
  if (g >= 2.0 * kPi) g = 0.0;
  return {g, U_T};
}

const char* to_string(Mode mode) {
  return mode == Mode::kBerthing ? "berthing" : "unberthing";
}

Mode mode_from_string(const std::string& name) {
  if (name == "berthing") return Mode::kBerthing;
  if (name == "unberthing") return Mode::kUnberthing;
  throw Error("unknown mode '" + name + "' (expected berthing|unberthing)", "mode");
}

void validate(const ToleranceVector& tol) {
  for (std::size_t i = 0; i < 6; ++i) {
    const double v = tol.values[i];
    if (!std::isfinite(v) || v < 0.0)
      throw Error("tolerance must be finite and non-negative", "tolerance[" + std::to_string(i) + "]");
    // Only the sway tolerance may be zero.
    if (v == 0.0 && i != 3)
      throw Error("tolerance must be strictly positive", "tolerance[" + std::to_string(i) + "]");
  }
}

StateVector dimension_weights(double w_L, double w_U) {
  const double L2 = w_L * w_L;
  const double U2 = w_U * w_U;
  return {1.0 / L2, 1.0 / U2, 1.0 / L2, 1.0 / U2, kPi * kPi, L2 / U2};
}

WeightConfig make_weights(double w_L, double w_U, double L_tol, double w_pen, double w_c) {
  WeightConfig w;
  w.w_pen = w_pen;
  w.w_c = w_c;
  w.w_L = w_L;
  w.w_U = w_U;
  w.L_tol = L_tol;
  w.w_dim = dimension_weights(w_L, w_U);
  validate(w);
  return w;
}

void validate(const WeightConfig& w) {
  if (!(w.w_L > 0.0) || !std::isfinite(w.w_L)) throw Error("must be positive", "objective.w_L");
  if (!(w.w_U > 0.0) || !std::isfinite(w.w_U)) throw Error("must be positive", "objective.w_U");
  if (!(w.L_tol > 0.0)) throw Error("must be positive", "objective.L_tol");
  if (!(w.w_pen > 1.0)) throw Error("must exceed 1", "objective.w_pen");
  if (!(w.w_c > w.w_pen)) throw Error("must exceed w_pen", "objective.w_c");
  for (double v : w.w_dim)
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("must be positive", "objective.w_dim");
}

void validate(const ShipParameters& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("must be positive", std::string("ship.") + name);
  };
  positive(p.Lpp, "Lpp");
  positive(p.B, "B");
  positive(p.d, "d");
  positive(p.Dp, "Dp");
  positive(p.A_R, "A_R");
  positive(p.D_BT, "D_BT");
  positive(p.D_ST, "D_ST");
  positive(p.mass, "mass");
  positive(p.A_T, "A_T");
  positive(p.A_L, "A_L");
  positive(p.L_OA, "L_OA");
  positive(p.Cb, "Cb");
  positive(p.rho_water, "rho_water");
  positive(p.rho_air, "rho_air");
  positive(p.u_threshold, "u_threshold");
  if (!(std::abs(p.x_G) < 0.5 * p.Lpp)) throw Error("|x_G| must be below Lpp/2", "ship.x_G");
  if (!std::isfinite(p.x_BT) || !std::isfinite(p.x_ST)) throw Error("thruster position non-finite", "ship");
}

void require_all_groups(const HydroCoefficients& c) {
  auto need = [](bool present, const char* group) {
    if (!present) throw Error("missing coefficient group", std::string("coefficients.") + group);
  };
  need(c.added_mass.has_value(), "added_mass");
  need(c.hull.has_value(), "hull");
  need(c.propeller_forward.has_value(), "propeller_forward");
  need(c.propeller_reverse.has_value(), "propeller_reverse");
  need(c.rudder.has_value(), "rudder");
  need(c.rudder_third_quadrant.has_value(), "rudder_third_quadrant");
  need(c.wind.has_value(), "wind");
  need(c.thruster.has_value(), "thruster");
  const auto& am = *c.added_mass;
  if (am.mx < 0.0 || am.my < 0.0 || am.Jzz < 0.0 || !(am.kzz > 0.0))
    throw Error("added masses and moments must be non-negative", "coefficients.added_mass");
}

}  // namespace berth
