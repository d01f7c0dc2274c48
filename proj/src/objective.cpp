#include "berth/objective.hpp"

#include <cmath>
#include <limits>

namespace berth {

namespace {
// Comparisons against tolerances allow for rounding in the deviation itself.
constexpr double kToleranceSlack = 1e-12;

bool within(double value, double tol) { return value <= tol * (1.0 + kToleranceSlack); }
}  // namespace

DecodedSchedule decode(std::span<const double> X, int m, double t_c) {
  if (m <= 0) throw Error("segment count must be positive", "m");
  const std::size_t expected = 4 * static_cast<std::size_t>(m) + 1;
  if (X.size() != expected)
    throw Error("decision vector must have 4m+1 = " + std::to_string(expected) +
                " values, got " + std::to_string(X.size()));
  DecodedSchedule d;
  d.terminal_time = X[0];
  d.schedule.segment_duration = t_c;
  d.schedule.terminal_time = X[0];
  d.schedule.segments.resize(m);
  for (int i = 0; i < m; ++i) {
    auto& seg = d.schedule.segments[i];
    seg.delta = X[1 + i];
    seg.np = X[1 + m + i];
    seg.nbt = X[1 + 2 * m + i];
    seg.nst = X[1 + 3 * m + i];
  }
  return d;
}

std::vector<double> encode(const ControlSchedule& schedule) {
  const std::size_t m = schedule.segments.size();
  std::vector<double> X(4 * m + 1);
  X[0] = schedule.terminal_time;
  for (std::size_t i = 0; i < m; ++i) {
    X[1 + i] = schedule.segments[i].delta;
    X[1 + m + i] = schedule.segments[i].np;
    X[1 + 2 * m + i] = schedule.segments[i].nbt;
    X[1 + 3 * m + i] = schedule.segments[i].nst;
  }
  return X;
}

StateVector terminal_deviation(const ShipState& x_end, const ShipState& x_des) {
  return {x_des.x0 - x_end.x0, x_des.u - x_end.u,     x_des.y0 - x_end.y0,
          x_des.vm - x_end.vm, wrap_angle(x_des.psi - x_end.psi), x_des.r - x_end.r};
}

std::array<bool, 6> terminal_satisfied(const StateVector& dev, Mode mode,
                                       const ToleranceVector& tol) {
  std::array<bool, 6> ok{};
  for (int i = 0; i < 6; ++i) ok[i] = within(std::abs(dev[i]), tol.values[i]);
  // Leaving the port faster than the exit speed is never penalized.
  if (mode == Mode::kUnberthing) ok[1] = within(dev[1], tol.values[1]);
  return ok;
}

double terminal_penalty(const StateVector& dev, Mode mode, const ToleranceVector& tol,
                        const WeightConfig& w) {
  const auto ok = terminal_satisfied(dev, mode, tol);
  double J1 = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double t = tol.values[i];
    J1 += w.w_dim[i] * (ok[i] ? t * t : w.w_pen * dev[i] * dev[i]);
  }
  return J1;
}

double collision_penalty(const Trajectory& traj) {
  double C = 0.0;
  for (std::size_t k = 1; k < traj.size(); ++k)
    C += 0.5 * (traj.penalties[k - 1] + traj.penalties[k]) * (traj.times[k] - traj.times[k - 1]);
  return C;
}

double waypoint_distance(const Trajectory& traj, const Waypoint& wp) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : traj.states) best = std::min(best, std::hypot(s.x0 - wp.x0, s.y0 - wp.y0));
  return best;
}

double waypoint_penalty(const Trajectory& traj, std::span<const Waypoint> wps,
                        const WeightConfig& w) {
  double J = 0.0;
  for (const auto& wp : wps) {
    const double L = waypoint_distance(traj, wp);
    J += w.w_dim[0] * (L <= wp.L_tol ? wp.L_tol * wp.L_tol : L * L);
  }
  return J;
}

ObjectiveBreakdown score_trajectory(const Trajectory& traj, const Scenario& sc) {
  ObjectiveBreakdown b;
  b.t_f = traj.times.back();
  const auto dev = terminal_deviation(traj.final_state(), sc.x_des);
  b.J1 = terminal_penalty(dev, sc.mode, sc.tol, sc.weights);
  b.C = collision_penalty(traj);
  b.J_WP = waypoint_penalty(traj, sc.waypoints, sc.weights);
  b.terminal_term = b.J1 * b.t_f;
  b.waypoint_term = b.J_WP * b.t_f;
  b.collision_term = sc.weights.w_c * b.C;
  b.J = b.terminal_term + b.waypoint_term + b.collision_term;
  const auto ok = terminal_satisfied(dev, sc.mode, sc.tol);
  b.feasible = b.C == 0.0;
  for (bool v : ok) b.feasible = b.feasible && v;
  return b;
}

Trajectory rollout(std::span<const double> X, const Scenario& sc) {
  const auto d = decode(X, sc.m, sc.t_c);
  return simulate(sc.x_int, d.schedule, sc.env, sc.model, sc.dt, {&sc.obstacles, &sc.domain});
}

ObjectiveBreakdown evaluate(std::span<const double> X, const Scenario& sc) {
  try {
    return score_trajectory(rollout(X, sc), sc);
  } catch (const SimulationError&) {
    ObjectiveBreakdown b;
    b.t_f = X.empty() ? 0.0 : X[0];
    b.J = kDivergedObjective;
    b.diverged = true;
    return b;
  }
}

}  // namespace berth
