#pragma once

// Shared domain types for berthing/unberthing planning. All quantities are SI
// (m, s, rad, kg); knots and degrees appear only at file and CLI boundaries.

#include <array>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace berth {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGravity = 9.80665;
inline constexpr double kKnot = 0.514444;  // m/s per knot

/// Error raised for invalid inputs. `path` names the offending field when the
/// error originates from configuration (e.g. "obstacles[3]").
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::string path = {})
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

double wrap_angle(double theta);
double knots_to_mps(double knots);
double mps_to_knots(double mps);
double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// Berthing speed covering 90% of measured berthings for a ship of the given
/// gross tonnage: 0.279 * GT^-0.114 (m/s).
double berthing_speed_tolerance(double gross_tonnage);

/// Kinematic/kinetic state in the interleaved order (x0, u, y0, vm, psi, r).
/// x0 points north, y0 east, psi is measured clockwise from north.
struct ShipState {
  double x0 = 0.0;
  double u = 0.0;
  double y0 = 0.0;
  double vm = 0.0;
  double psi = 0.0;
  double r = 0.0;

  std::array<double, 6> to_array() const { return {x0, u, y0, vm, psi, r}; }
  static ShipState from_array(const std::array<double, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
  bool is_finite() const;
  bool operator==(const ShipState&) const = default;
};

/// Builds a state with heading normalized to (-pi, pi]; throws on non-finite input.
ShipState make_state(double x0, double u, double y0, double vm, double psi, double r);

struct ControlInput {
  double delta = 0.0;  // rudder angle (rad), positive turns to starboard
  double np = 0.0;     // propeller (1/s)
  double nbt = 0.0;    // bow thruster (1/s), positive pushes to starboard
  double nst = 0.0;    // stern thruster (1/s)
  bool operator==(const ControlInput&) const = default;
};

struct ControlSchedule {
  std::vector<ControlInput> segments;
  double segment_duration = 90.0;
  double terminal_time = 0.0;

  /// Segment active at time t: floor(t / segment_duration), capped at m-1.
  const ControlInput& at(double t) const;
  bool operator==(const ControlSchedule&) const = default;
};

struct WindCondition {
  double gamma_T = 0.0;  // [0, 2pi); zero blows from +x0 toward -x0
  double U_T = 0.0;      // >= 0
  bool operator==(const WindCondition&) const = default;
};

WindCondition make_wind(double gamma_T, double U_T);

enum class Mode { kBerthing, kUnberthing };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& name);

using StateVector = std::array<double, 6>;

/// Terminal tolerances in the ShipState layout.
struct ToleranceVector {
  StateVector values{};
  bool operator==(const ToleranceVector&) const = default;
};

void validate(const ToleranceVector& tol);

struct WeightConfig {
  double w_pen = 1.0e4;
  double w_c = 1.0e10;
  double w_L = 15.0;
  double w_U = 1.0;
  double L_tol = 75.0;
  StateVector w_dim{};

  bool operator==(const WeightConfig&) const = default;
};

/// (1/wL^2, 1/wU^2, 1/wL^2, 1/wU^2, pi^2, wL^2/wU^2)
StateVector dimension_weights(double w_L, double w_U);
WeightConfig make_weights(double w_L, double w_U, double L_tol, double w_pen = 1.0e4,
                          double w_c = 1.0e10);
void validate(const WeightConfig& w);

struct ShipParameters {
  double Lpp = 150.0;
  double B = 24.46;
  double d = 10.06;
  double Dp = 4.20;
  double A_R = 26.58;
  double D_BT = 2.5;
  double D_ST = 2.5;
  double mass = 31412.0e3;
  double x_G = 15.84;
  double A_T = 213.55;
  double A_L = 1150.50;
  double L_OA = 160.0;
  double Cb = 0.831;
  double x_BT = 60.0;
  double x_ST = -60.0;
  double rho_water = 1025.0;
  double rho_air = 1.225;
  double u_threshold = 2.5722;

  bool operator==(const ShipParameters&) const = default;
};

void validate(const ShipParameters& p);

// Hydrodynamic coefficient groups. Nondimensional hull quantities use
// 0.5*rho*Lpp*d (forces) and 0.5*rho*Lpp^2*d (moments, masses).

struct AddedMass {
  double mx = 0.0;   // m_x'
  double my = 0.0;   // m_y'
  double Jzz = 0.0;  // J_zz' (nondim by 0.5*rho*Lpp^4*d)
  double kzz = 0.25; // radius of gyration / Lpp, gives I_zz = m (kzz Lpp)^2
  bool operator==(const AddedMass&) const = default;
};

/// Low-speed unified hull model: linear terms plus cross-flow drag.
struct HullCoefficients {
  double X0F = 0.0;  // forward resistance
  double X0A = 0.0;  // astern resistance
  double Xvr = 0.0;
  double Yv = 0.0;
  double Yr = 0.0;
  double Nv = 0.0;
  double Nr = 0.0;
  double CD = 0.0;   // lateral cross-flow drag
  double CrY = 1.0;
  double CrN = 1.0;
  bool operator==(const HullCoefficients&) const = default;
};

struct PropellerForward {
  double wP0 = 0.0;
  double tP = 0.0;
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  bool operator==(const PropellerForward&) const = default;
};

/// Reversed propeller, n_p < 0, with Js = u / (|n_p| Dp) clamped to [J_min, J_max].
/// X_P = rho Dp^4 n^2 (c0 + c1 Js); lateral terms scaled by 0.5 rho L d (n Dp)^2.
struct PropellerReverse {
  double c0 = 0.0;
  double c1 = 0.0;
  double J_min = -1.0;
  double J_max = 1.0;
  double A0 = 0.0;
  double A1 = 0.0;
  double B0 = 0.0;
  double B1 = 0.0;
  bool operator==(const PropellerReverse&) const = default;
};

struct RudderCoefficients {
  double f_alpha = 0.0;
  double epsilon = 1.0;
  double kappa = 0.5;
  double eta = 1.0;
  double tR = 0.0;
  double aH = 0.0;
  double xH = 0.0;  // xH' (fraction of Lpp)
  double xR = -0.5; // xR'
  double gammaR = 0.0;
  double lR = -1.0; // lR'
  bool operator==(const RudderCoefficients&) const = default;
};

/// Astern motion with the propeller turning ahead: slipstream opposes the inflow.
struct RudderThirdQuadrant {
  double kappa_slip = 0.5;
  double gammaR = 0.0;
  bool operator==(const RudderThirdQuadrant&) const = default;
};

struct WindCoefficients {
  double X0 = 0.0, X1 = 0.0, X3 = 0.0, X5 = 0.0;
  double Y1 = 0.0, Y3 = 0.0, Y5 = 0.0;
  double N1 = 0.0, N2 = 0.0, N3 = 0.0;
  bool operator==(const WindCoefficients&) const = default;
};

struct ThrusterCoefficients {
  double K_TBT = 0.0;
  double K_TST = 0.0;
  double a_YSB = 0.0;
  double a_YST = 0.0;
  double a_NSB = 0.0;
  double a_NST = 0.0;
  bool operator==(const ThrusterCoefficients&) const = default;
};

/// Optional groups may be absent; using a submodel whose group is missing is an error.
struct HydroCoefficients {
  std::string name;
  std::optional<AddedMass> added_mass;
  std::optional<HullCoefficients> hull;
  std::optional<PropellerForward> propeller_forward;
  std::optional<PropellerReverse> propeller_reverse;
  std::optional<RudderCoefficients> rudder;
  std::optional<RudderThirdQuadrant> rudder_third_quadrant;
  std::optional<WindCoefficients> wind;
  std::optional<ThrusterCoefficients> thruster;

  bool operator==(const HydroCoefficients&) const = default;
};

/// Throws naming the first missing group ("coefficients.<group>").
void require_all_groups(const HydroCoefficients& c);

}  // namespace berth
