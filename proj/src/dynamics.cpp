#include "berth/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace berth {

namespace {

template <typename T>
const T& group(const std::optional<T>& g, const char* name) {
  if (!g) throw Error("missing coefficient group", std::string("coefficients.") + name);
  return *g;
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Integrals over x in [-1/2, 1/2] of |a + b x| (a + b x) and of the same times x.
// Closed forms avoid quadrature in the hot loop; the no-sign-change branch is
// used whenever the integrand does not cross zero, which keeps small b exact.
double crossflow_force(double a, double b) {
  if (std::abs(a) >= 0.5 * std::abs(b)) return sgn(a) * (a * a + b * b / 12.0);
  const double s1 = a + 0.5 * b;
  const double s0 = a - 0.5 * b;
  return (std::pow(std::abs(s1), 3) - std::pow(std::abs(s0), 3)) / (3.0 * b);
}

double crossflow_moment(double a, double b) {
  if (std::abs(a) >= 0.5 * std::abs(b)) return sgn(a) * a * b / 6.0;
  auto G = [a](double s) {
    const double as = std::abs(s);
    return s * s * s * as / 4.0 - a * as * as * as / 3.0;
  };
  return (G(a + 0.5 * b) - G(a - 0.5 * b)) / (b * b);
}

double thrust_coefficient(const PropellerForward& pf, double J) {
  return pf.k0 + pf.k1 * J + pf.k2 * J * J;
}

// Rudder normal force for an effective inflow (u_R, v_R); valid for either
// inflow direction.
Force rudder_from_inflow(double uR, double vR, double delta, const ShipParameters& p,
                         const RudderCoefficients& rc) {
  const double UR = std::hypot(uR, vR);
  const double FN = 0.5 * p.rho_water * p.A_R * rc.f_alpha * UR *
                    (uR * std::sin(delta) - vR * std::cos(delta));
  return {-(1.0 - rc.tR) * FN * std::sin(delta), -(1.0 + rc.aH) * FN * std::cos(delta),
          -(rc.xR + rc.aH * rc.xH) * p.Lpp * FN * std::cos(delta)};
}

constexpr double kMaxSpeed = 50.0;  // m/s
constexpr double kMaxYawRate = 1.0; // rad/s

}  // namespace

ApparentWind apparent_wind(const ShipState& s, const WindCondition& wind) {
  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  // True wind blows toward -(cos gamma_T, sin gamma_T).
  const double wx = -wind.U_T * std::cos(wind.gamma_T);
  const double wy = -wind.U_T * std::sin(wind.gamma_T);
  const double sx = s.u * c - s.vm * sn;
  const double sy = s.u * sn + s.vm * c;
  const double ax = wx - sx;
  const double ay = wy - sy;
  // Air velocity relative to the ship in the ship frame.
  const double ua = ax * c + ay * sn;
  const double va = -ax * sn + ay * c;
  const double UA = std::hypot(ua, va);
  const double gA = UA > 0.0 ? std::atan2(-va, -ua) : 0.0;
  return {UA, gA};
}

Force wind_force(const ApparentWind& aw, const ShipParameters& p, const HydroCoefficients& c) {
  const auto& wc = group(c.wind, "wind");
  const double q = 0.5 * p.rho_air * aw.U_A * aw.U_A;
  const double th = 2.0 * kPi - aw.gamma_A;
  const double CX = wc.X0 + wc.X1 * std::cos(th) + wc.X3 * std::cos(3.0 * th) +
                    wc.X5 * std::cos(5.0 * th);
  const double CY = wc.Y1 * std::sin(th) + wc.Y3 * std::sin(3.0 * th) + wc.Y5 * std::sin(5.0 * th);
  const double CN = wc.N1 * std::sin(th) + wc.N2 * std::sin(2.0 * th) + wc.N3 * std::sin(3.0 * th);
  return {q * p.A_T * CX, q * p.A_L * CY, q * p.A_L * p.L_OA * CN};
}

Force wind_force(const ShipState& state, const WindCondition& wind, const ShipParameters& p,
                 const HydroCoefficients& c) {
  return wind_force(apparent_wind(state, wind), p, c);
}

Force thruster_force(const ShipState& s, const ControlInput& in, const ShipParameters& p,
                     const HydroCoefficients& c) {
  const auto& tc = group(c.thruster, "thruster");
  if (std::abs(s.u) > p.u_threshold) return {};
  const double Fr = std::abs(s.u) / std::sqrt(kGravity * p.Lpp);
  const double Tbt = p.rho_water * std::pow(p.D_BT, 4) * in.nbt * std::abs(in.nbt) * tc.K_TBT;
  const double Tst = p.rho_water * std::pow(p.D_ST, 4) * in.nst * std::abs(in.nst) * tc.K_TST;
  const double Y = (1.0 + tc.a_YSB * Fr) * Tbt + (1.0 + tc.a_YST * Fr) * Tst;
  const double N = (1.0 + tc.a_NSB * Fr) * Tbt * p.x_BT + (1.0 + tc.a_NST * Fr) * Tst * p.x_ST;
  return {0.0, Y, N};
}

Force hull_force(const ShipState& s, const ShipParameters& p, const HydroCoefficients& c) {
  const auto& h = group(c.hull, "hull");
  const double L = p.Lpp;
  const double qL = 0.5 * p.rho_water * L * p.d;
  const double U = std::hypot(s.u, s.vm);
  const double beta = U > 0.0 ? std::atan2(-s.vm, s.u) : 0.0;
  const double X0 = h.X0F + (h.X0A - h.X0F) * std::abs(beta) / kPi;
  const double X = qL * (X0 * s.u * U + h.Xvr * s.vm * s.r * L);
  const double YHN = -h.CD * crossflow_force(s.vm, h.CrY * s.r * L);
  const double NHN = -h.CD * crossflow_moment(s.vm, h.CrN * s.r * L);
  const double Y = qL * (h.Yv * s.vm * std::abs(s.u) + h.Yr * s.r * L * s.u + YHN);
  const double N = qL * L * (h.Nv * s.vm * s.u + h.Nr * s.r * L * std::abs(s.u) + NHN);
  return {X, Y, N};
}

Force propeller_force(const ShipState& s, const ControlInput& in, const ShipParameters& p,
                      const HydroCoefficients& c) {
  const double n = in.np;
  const double D = p.Dp;
  const double rho = p.rho_water;
  if (n >= 0.0) {
    const auto& pf = group(c.propeller_forward, "propeller_forward");
    if (n == 0.0) return {};
    const double uP = (1.0 - pf.wP0) * s.u;
    // (1 - tP) rho n^2 D^4 KT(J) expanded in n so that it stays finite as n -> 0.
    const double X = (1.0 - pf.tP) * rho *
                     (pf.k0 * n * n * std::pow(D, 4) + pf.k1 * n * std::pow(D, 3) * uP +
                      pf.k2 * D * D * uP * uP);
    return {X, 0.0, 0.0};
  }
  const auto& pr = group(c.propeller_reverse, "propeller_reverse");
  const double Js = std::clamp(s.u / (std::abs(n) * D), pr.J_min, pr.J_max);
  const double X = rho * std::pow(D, 4) * n * n * (pr.c0 + pr.c1 * Js);
  const double qL = 0.5 * rho * p.Lpp * p.d;
  const double nD2 = (n * D) * (n * D);
  return {X, qL * nD2 * (pr.A0 + pr.A1 * Js), qL * p.Lpp * nD2 * (pr.B0 + pr.B1 * Js)};
}

Force rudder_force(const ShipState& s, const ControlInput& in, const ShipParameters& p,
                   const HydroCoefficients& c) {
  const auto& pf = group(c.propeller_forward, "propeller_forward");
  const double n = in.np;
  const double D = p.Dp;
  const double uP = (1.0 - pf.wP0) * s.u;
  const double L = p.Lpp;

  if (s.u < 0.0 && n >= 0.0) {
    const auto& rc = group(c.rudder, "rudder");
    const auto& r3 = group(c.rudder_third_quadrant, "rudder_third_quadrant");
    double slip2 = 0.0;
    if (n > 0.0) {
      const double KT = std::max(0.0, thrust_coefficient(pf, uP / (n * D)));
      const double us = rc.epsilon * r3.kappa_slip;
      slip2 = us * us * 8.0 * KT * (n * D) * (n * D) / kPi;
    }
    const double inflow = rc.epsilon * uP;
    const double q = slip2 - inflow * inflow;
    const double uR = sgn(q) * std::sqrt(std::abs(q));
    const double vR = r3.gammaR * (-s.vm - rc.lR * L * s.r);
    return rudder_from_inflow(uR, vR, in.delta, p, rc);
  }

  const auto& rc = group(c.rudder, "rudder");
  double uR = rc.epsilon * uP;
  if (n > 0.0) {
    const double KT = std::max(0.0, thrust_coefficient(pf, uP / (n * D)));
    const double jet = std::sqrt(uP * uP + 8.0 * KT * (n * D) * (n * D) / kPi);
    const double accel = uP + rc.kappa * (jet - uP);
    uR = rc.epsilon * std::sqrt(rc.eta * accel * accel + (1.0 - rc.eta) * uP * uP);
  }
  const double vR = rc.gammaR * (-s.vm - rc.lR * L * s.r);
  return rudder_from_inflow(uR, vR, in.delta, p, rc);
}

Force hull_propeller_rudder_force(const ShipState& s, const ControlInput& in,
                                  const ShipParameters& p, const HydroCoefficients& c) {
  return hull_force(s, p, c) + propeller_force(s, in, p, c) + rudder_force(s, in, p, c);
}

ForceBreakdown force_breakdown(const ShipState& s, const ControlInput& in, const Environment& env,
                               const ShipModel& model) {
  const auto& p = model.params;
  const auto& c = model.coeffs;
  ForceBreakdown f;
  f.hull = hull_force(s, p, c);
  f.propeller = propeller_force(s, in, p, c);
  f.rudder = rudder_force(s, in, p, c);
  if (env.wind_enabled) f.wind = wind_force(s, env.wind, p, c);
  f.thruster = thruster_force(s, in, p, c);
  return f;
}

StateVector derivative(const ShipState& s, const ControlInput& in, const Environment& env,
                       const ShipModel& model) {
  const auto& p = model.params;
  const auto& am = group(model.coeffs.added_mass, "added_mass");
  const Force F = force_breakdown(s, in, env, model).total();

  const double L = p.Lpp;
  const double q2 = 0.5 * p.rho_water * L * L * p.d;
  const double m = p.mass;
  const double mx = am.mx * q2;
  const double my = am.my * q2;
  const double Jzz = am.Jzz * q2 * L * L;
  const double Izz = m * (am.kzz * L) * (am.kzz * L);
  const double xG = p.x_G;

  const double m11 = m + mx;
  const double a = m + my;
  const double b = xG * m;
  const double d = Izz + Jzz + xG * xG * m;
  const double det = a * d - b * b;
  if (!(m11 > 0.0) || !(det > 0.0) || !std::isfinite(det))
    throw Error("singular mass matrix", "coefficients.added_mass");

  const double rx = F.X + (m + my) * s.vm * s.r + xG * m * s.r * s.r;
  const double ry = F.Y - (m + mx) * s.u * s.r;
  const double rn = F.N - xG * m * s.u * s.r;

  const double udot = rx / m11;
  const double vdot = (d * ry - b * rn) / det;
  const double rdot = (a * rn - b * ry) / det;

  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  return {s.u * c - s.vm * sn, udot, s.u * sn + s.vm * c, vdot, s.r, rdot};
}

Trajectory simulate(const ShipState& x_init, const ControlSchedule& schedule,
                    const Environment& env, const ShipModel& model, double dt,
                    const CollisionContext& collision) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("time step must be positive", "dt");
  if (schedule.segments.empty()) throw Error("control schedule has no segments");
  const double tf = schedule.terminal_time;
  if (!(tf > 0.0) || !std::isfinite(tf)) throw Error("terminal time must be positive");
  if (static_cast<double>(schedule.segments.size()) * schedule.segment_duration < tf - 1e-9)
    throw Error("control schedule does not cover the terminal time");

  const auto full_steps = static_cast<std::size_t>(std::ceil(tf / dt - 1e-9));
  Trajectory tr;
  tr.times.reserve(full_steps + 1);
  tr.states.reserve(full_steps + 1);
  tr.controls.reserve(full_steps + 1);
  tr.penalties.reserve(full_steps + 1);

  const bool with_collision = collision.obstacles && collision.domain;
  std::vector<Point> verts(with_collision ? collision.domain->n_vertices : 0);
  auto record = [&](double t, const ShipState& s) {
    tr.times.push_back(t);
    tr.states.push_back(s);
    tr.controls.push_back(schedule.at(t));
    double pen = 0.0;
    if (with_collision) {
      domain_vertices_into(s, *collision.domain, verts);
      pen = vertex_penalty(verts, *collision.obstacles);
    }
    tr.penalties.push_back(pen);
  };

  auto add = [](const ShipState& s, const StateVector& k, double h) {
    return ShipState{s.x0 + h * k[0], s.u + h * k[1], s.y0 + h * k[2],
                     s.vm + h * k[3], s.psi + h * k[4], s.r + h * k[5]};
  };

  ShipState s = x_init;
  s.psi = wrap_angle(s.psi);
  record(0.0, s);
  for (std::size_t k = 0; k < full_steps; ++k) {
    const double t = k * dt;
    const double t_next = (k + 1 == full_steps) ? tf : (k + 1) * dt;
    const double h = t_next - t;
    const ControlInput& in = schedule.at(t);
    const auto k1 = derivative(s, in, env, model);
    const auto k2 = derivative(add(s, k1, 0.5 * h), in, env, model);
    const auto k3 = derivative(add(s, k2, 0.5 * h), in, env, model);
    const auto k4 = derivative(add(s, k3, h), in, env, model);
    StateVector next = s.to_array();
    for (int i = 0; i < 6; ++i) next[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    s = ShipState::from_array(next);
    if (!s.is_finite()) throw SimulationError("state became non-finite", t_next);
    if (std::abs(s.u) > kMaxSpeed || std::abs(s.vm) > kMaxSpeed || std::abs(s.r) > kMaxYawRate)
      throw SimulationError("state left the admissible envelope", t_next);
    s.psi = wrap_angle(s.psi);
    record(t_next, s);
  }
  return tr;
}

}  // namespace berth
