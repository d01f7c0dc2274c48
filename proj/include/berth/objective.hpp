#pragma once

// Direct-shooting objective: decode the decision vector, simulate, and score
// the terminal state, the time-integrated collision penalty and waypoints.

#include <span>
#include <vector>

#include "berth/dynamics.hpp"
#include "berth/scenario.hpp"

namespace berth {

/// Finite objective assigned to diverged rollouts; exceeds any collision value.
inline constexpr double kDivergedObjective = 1.0e100;

struct ObjectiveBreakdown {
  double J = 0.0;
  double terminal_term = 0.0;   // J1 * t_f
  double collision_term = 0.0;  // w_c * C
  double waypoint_term = 0.0;   // J_WP * t_f
  double J1 = 0.0;
  double J_WP = 0.0;
  double C = 0.0;
  double t_f = 0.0;
  bool feasible = false;
  bool diverged = false;
};

struct DecodedSchedule {
  double terminal_time = 0.0;
  ControlSchedule schedule;
};

DecodedSchedule decode(std::span<const double> X, int m, double t_c);
std::vector<double> encode(const ControlSchedule& schedule);

/// Componentwise x_des - x_end with the heading difference wrapped.
StateVector terminal_deviation(const ShipState& x_end, const ShipState& x_des);

/// Per-component satisfaction flags; unberthing treats surge one-sidedly.
std::array<bool, 6> terminal_satisfied(const StateVector& dev, Mode mode,
                                       const ToleranceVector& tol);

double terminal_penalty(const StateVector& dev, Mode mode, const ToleranceVector& tol,
                        const WeightConfig& w);

/// Trapezoidal time integral of the per-sample penalties.
double collision_penalty(const Trajectory& traj);

/// Minimum sampled midship distance to the waypoint.
double waypoint_distance(const Trajectory& traj, const Waypoint& wp);

double waypoint_penalty(const Trajectory& traj, std::span<const Waypoint> wps,
                        const WeightConfig& w);

/// Assembles the objective from an already simulated trajectory.
ObjectiveBreakdown score_trajectory(const Trajectory& traj, const Scenario& scenario);

/// Simulation + scoring. Divergence yields kDivergedObjective, not an exception.
ObjectiveBreakdown evaluate(std::span<const double> X, const Scenario& scenario);

/// Simulates a decision vector against the scenario, with collision penalties.
Trajectory rollout(std::span<const double> X, const Scenario& scenario);

}  // namespace berth
