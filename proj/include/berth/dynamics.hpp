#pragma once

// Three degree-of-freedom MMG maneuvering model with wind and side thrusters,
// and a fixed-step RK4 integrator producing trajectories from schedules.

#include <vector>

#include "berth/core.hpp"
#include "berth/geometry.hpp"

namespace berth {

struct Force {
  double X = 0.0;
  double Y = 0.0;
  double N = 0.0;

  Force& operator+=(const Force& o) {
    X += o.X;
    Y += o.Y;
    N += o.N;
    return *this;
  }
  friend Force operator+(Force a, const Force& b) { return a += b; }
  Force operator*(double k) const { return {X * k, Y * k, N * k}; }
  bool operator==(const Force&) const = default;
};

struct ForceBreakdown {
  Force hull;
  Force propeller;
  Force rudder;
  Force wind;
  Force thruster;

  Force total() const { return hull + propeller + rudder + wind + thruster; }
};

struct ApparentWind {
  double U_A = 0.0;
  double gamma_A = 0.0;  // direction the wind comes from, ship frame, clockwise from the bow
};

struct ShipModel {
  ShipParameters params;
  HydroCoefficients coeffs;
};

/// Wind and whether the wind submodel is active at all (self-motion air drag
/// is included whenever it is).
struct Environment {
  WindCondition wind;
  bool wind_enabled = false;
};

class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, double time)
      : Error(what + " at t=" + std::to_string(time) + " s"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

ApparentWind apparent_wind(const ShipState& state, const WindCondition& wind);

Force wind_force(const ApparentWind& aw, const ShipParameters& p, const HydroCoefficients& c);
Force wind_force(const ShipState& state, const WindCondition& wind, const ShipParameters& p,
                 const HydroCoefficients& c);

Force thruster_force(const ShipState& state, const ControlInput& in, const ShipParameters& p,
                     const HydroCoefficients& c);

Force hull_force(const ShipState& state, const ShipParameters& p, const HydroCoefficients& c);
Force propeller_force(const ShipState& state, const ControlInput& in, const ShipParameters& p,
                      const HydroCoefficients& c);
Force rudder_force(const ShipState& state, const ControlInput& in, const ShipParameters& p,
                   const HydroCoefficients& c);

/// Hull + propeller + rudder with quadrant-dependent submodel selection.
Force hull_propeller_rudder_force(const ShipState& state, const ControlInput& in,
                                  const ShipParameters& p, const HydroCoefficients& c);

ForceBreakdown force_breakdown(const ShipState& state, const ControlInput& in,
                               const Environment& env, const ShipModel& model);

/// Time derivative (x0', u', y0', vm', psi', r').
StateVector derivative(const ShipState& state, const ControlInput& in, const Environment& env,
                       const ShipModel& model);

struct Trajectory {
  std::vector<double> times;
  std::vector<ShipState> states;
  std::vector<ControlInput> controls;
  std::vector<double> penalties;  // instantaneous collision penalty per sample (m)

  std::size_t size() const { return times.size(); }
  const ShipState& final_state() const { return states.back(); }
};

/// Obstacles and domain used to fill Trajectory::penalties. When absent the
/// penalties are zero.
struct CollisionContext {
  const ObstacleSet* obstacles = nullptr;
  const DomainConfig* domain = nullptr;
};

/// RK4 from t = 0 to schedule.terminal_time with step dt; the last step is
/// shortened to land on the terminal time. Throws SimulationError when the
/// state becomes non-finite or leaves the physically sane envelope.
Trajectory simulate(const ShipState& x_init, const ControlSchedule& schedule,
                    const Environment& env, const ShipModel& model, double dt,
                    const CollisionContext& collision = {});

}  // namespace berth
