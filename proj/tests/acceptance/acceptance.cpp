// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "berth/dynamics.hpp"
#include "berth/geometry.hpp"
#include "berth/objective.hpp"
#include "berth/optimizer.hpp"
#include "berth/planner.hpp"
#include "berth/scenario.hpp"

using namespace berth;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ---- AC1: terminal penalty at tolerance, Nanko berthing weights

void ac1() {
  const auto sc = builtin("nanko_berth");
  StateVector dev;
  for (int i = 0; i < 6; ++i) dev[i] = sc.tol.values[i];
  const double J1 = terminal_penalty(dev, Mode::kBerthing, sc.tol, sc.weights);
  const double J = J1 * 1081.6;
  const bool ok = std::abs(J1 - 1.67130e-2) <= 0.5e-7 && std::abs(J - 18.077) <= 0.002;
  report("AC1", ok, fmt("J1 = %.6e, J(t_f = 1081.6) = %.4f", J1, J));
}

// ---- AC2: berthing speed regression

void ac2() {
  const double v = berthing_speed_tolerance(10000.0);
  report("AC2", std::abs(v - 0.0976) <= 1e-4, fmt("v(10000 GT) = %.5f m/s", v));
}

// ---- AC3: penetration length against a brute-force oracle

bool winding_inside(const Point& p, const std::vector<Point>& v) {
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    double d = std::atan2(b.y - p.y, b.x - p.x) - std::atan2(a.y - p.y, a.x - p.x);
    if (d > kPi) d -= 2 * kPi;
    if (d < -kPi) d += 2 * kPi;
    total += d;
  }
  return std::abs(total) > kPi;
}

// Dense sampling along every edge, then the best bracket is narrowed by
// ternary search (distance along a segment is unimodal).
double brute_force_distance(const Point& p, const std::vector<Point>& v) {
  constexpr int kSamples = 4000;
  double best = INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    auto dist = [&](double t) { return std::hypot(a.x + t * (b.x - a.x) - p.x, a.y + t * (b.y - a.y) - p.y); };
    int k_best = 0;
    double d_best = INFINITY;
    for (int k = 0; k <= kSamples; ++k) {
      const double d = dist(static_cast<double>(k) / kSamples);
      if (d < d_best) d_best = d, k_best = k;
    }
    double lo = std::max(0, k_best - 1) / double(kSamples);
    double hi = std::min(kSamples, k_best + 1) / double(kSamples);
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (dist(m1) < dist(m2)) hi = m2; else lo = m1;
    }
    best = std::min({best, d_best, dist(0.5 * (lo + hi))});
  }
  return best;
}

void ac3() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int polygons = 0, queries = 0, inside = 0;
  double worst = 0.0;
  while (polygons < 200) {
    const bool convex = polygons % 2 == 0;
    const int n = 3 + static_cast<int>(u(rng) * 18);
    const double cx = -500 + 1000 * u(rng), cy = -500 + 1000 * u(rng);
    const double R = 20 + 300 * u(rng);
    std::vector<double> ang(n);
    for (auto& a : ang) a = 2 * kPi * u(rng);
    std::sort(ang.begin(), ang.end());
    std::vector<Point> v;
    for (double a : ang) {
      const double r = convex ? R : R * (0.2 + 0.8 * u(rng));
      v.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    if (!polygon_defect(v).empty()) continue;
    const Polygon poly(v);
    ++polygons;
    for (int q = 0; q < 50; ++q) {
      const Point p{cx + R * (2.4 * u(rng) - 1.2), cy + R * (2.4 * u(rng) - 1.2)};
      const bool in = winding_inside(p, v);
      const double expected = in ? brute_force_distance(p, v) : 0.0;
      inside += in;
      worst = std::max(worst, std::abs(penetration_length(p, poly) - expected));
      ++queries;
    }
  }
  report("AC3", worst <= 1e-6 && queries == 10000,
         fmt("%.0f polygons, %.0f queries (%.0f inside), ", polygons, queries, inside) +
             fmt("max |error| = %.2e m", worst));
}

// ---- AC4: domain semi-extents

void ac4() {
  const auto sc = builtin("nanko_berth");
  const auto& cfg = sc.domain;
  const double half_L = 0.5 * cfg.Lpp, half_B = 0.5 * cfg.B;
  auto extents = [&](double U) {
    const auto m = domain_margins(U, 1.0, cfg);
    return std::array<double, 3>{m.fore + half_L, m.aft + half_L, m.lateral + half_B};
  };
  bool ok = true;
  double worst = 0.0;
  auto expect = [&](const std::array<double, 3>& got, const std::array<double, 3>& want) {
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  };
  for (double kn : {6.0, 6.5, 10.0}) expect(extents(knots_to_mps(kn)), {346.5, 231.0, 115.5});
  for (double kn : {0.0, 0.5, 1.0}) expect(extents(knots_to_mps(kn)), {112.5, 112.5, 36.69});
  ok = ok && worst < 1e-9;

  // Interpolant at the switch speeds equals the clamp values exactly.
  const auto at_min = domain_margins(cfg.U_min, 1.0, cfg);
  const auto at_max = domain_margins(cfg.U_max, 1.0, cfg);
  const double endpoint_gap =
      std::max({std::abs(at_min.fore - cfg.L_x_min), std::abs(at_min.aft - cfg.L_x_min),
                std::abs(at_min.lateral - cfg.L_y_min), std::abs(at_max.fore - cfg.L_x_max_L),
                std::abs(at_max.aft - cfg.L_x_max_S), std::abs(at_max.lateral - cfg.L_y_max)});
  ok = ok && endpoint_gap == 0.0;

  // Linear in between: second differences vanish on a uniform grid.
  double curvature = 0.0;
  const int N = 1000;
  for (int i = 1; i < N; ++i) {
    auto U = [&](int k) { return cfg.U_min + (cfg.U_max - cfg.U_min) * k / N; };
    const auto a = extents(U(i - 1)), b = extents(U(i)), c = extents(U(i + 1));
    for (int j = 0; j < 3; ++j) curvature = std::max(curvature, std::abs(a[j] - 2 * b[j] + c[j]));
  }
  ok = ok && curvature < 1e-9;

  // The vertex ring realizes the same extents.
  ShipState s;
  s.u = knots_to_mps(6.0);
  const auto v = domain_vertices(s, cfg);
  ok = ok && std::abs(v[0].x - 346.5) < 1e-9;
  report("AC4", ok, fmt("max extent error %.1e m, endpoint gap %.1e m, max second difference %.1e m", worst,
                        endpoint_gap, curvature));
}

// ---- AC5: optimizer sanity

void ac5() {
  const BoxBounds box{std::vector<double>(26, -5.0), std::vector<double>(26, 5.0)};
  int converged = 0;
  double worst_f = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.max_evaluations = 100000;
    const auto r = minimize(
        [](std::span<const double> x) {
          double s = 0.0;
          for (double v : x) s += (v - 1.3) * (v - 1.3);
          return s;
        },
        box, cfg);
    worst_f = std::max(worst_f, r.best_f);
    converged += r.best_f < 1e-10;
  }

  const BoxBounds small{{0, 0, 0, -1, -1, 2}, {1, 1, 1, 1, 1, 4}};
  const std::vector<double> target{2.0, -1.0, 0.5, 0.3, -7.0, 9.0};
  OptimizerConfig cfg;
  cfg.max_evaluations = 30000;
  const auto r = minimize(
      [&](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - target[i]) * (x[i] - target[i]);
        return s;
      },
      small, cfg);
  double proj_err = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double p = std::clamp(target[i], small.lower[i], small.upper[i]);
    proj_err = std::max(proj_err, std::abs(r.best_x[i] - p) / (small.upper[i] - small.lower[i]));
  }

  OptimizerConfig flat;
  flat.max_evaluations = 20000;
  const auto s = minimize([](std::span<const double>) { return 0.0; },
                          {std::vector<double>(26, 0.0), std::vector<double>(26, 1.0)}, flat);
  std::vector<int> head(s.populations.begin(), s.populations.begin() + std::min<std::size_t>(6, s.populations.size()));
  const bool schedule_ok = head == std::vector<int>{20, 40, 80, 160, 240, 240};
  std::string sched;
  for (int p : head) sched += std::to_string(p) + " ";

  report("AC5", converged == 5 && proj_err <= 1e-6 && schedule_ok,
         fmt("sphere %.0f/5 seeds (worst f = %.1e), projection error %.1e, ", converged, worst_f, proj_err) +
             "populations " + sched);
}

// ---- AC6: dynamics properties

ShipState mirror(const ShipState& s) { return {s.x0, s.u, -s.y0, -s.vm, wrap_angle(-s.psi), -s.r}; }

void ac6() {
  const auto model = builtin("nanko_berth").model;
  const Environment calm;

  const auto d0 = derivative(ShipState{}, ControlInput{}, calm, model);
  bool equilibrium = std::all_of(d0.begin(), d0.end(), [](double v) { return v == 0.0; });
  ControlSchedule idle;
  idle.segment_duration = 90.0;
  idle.terminal_time = 600.0;
  idle.segments.assign(7, ControlInput{});
  const ShipState moored{50.0, 0, -20.0, 0, 1.0, 0};
  equilibrium = equilibrium && simulate(moored, idle, calm, model, 1.0).final_state() == moored;

  ControlSchedule mix;
  mix.segment_duration = 60.0;
  mix.terminal_time = 420.0;
  mix.segments = {{0.35, 1.5, 0, 0},  {-0.2, 0.5, 1.0, -2.0}, {0.6, -1.0, 3.0, 2.0}, {0.0, -2.0, -4.0, 4.0},
                  {-0.5, 0.8, 0, 0}, {0.1, 2.0, 0, 0},      {0.25, 0.0, 2.0, 2.0}};
  ControlSchedule mixm = mix;
  for (auto& c : mixm.segments) c = {-c.delta, c.np, -c.nbt, -c.nst};
  const ShipState s0{0, 4.0, 0, 0.1, 0.2, 0.002};
  const auto a = simulate(s0, mix, calm, model, 0.5);
  const auto b = simulate(mirror(s0), mixm, calm, model, 0.5);
  double mirror_err = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto m = mirror(a.states[k]).to_array();
    const auto s = b.states[k].to_array();
    for (int i = 0; i < 6; ++i) {
      const double diff = i == 4 ? std::abs(wrap_angle(m[i] - s[i])) : std::abs(m[i] - s[i]);
      mirror_err = std::max(mirror_err, diff / std::max(1.0, std::abs(m[i])));
    }
  }

  double thruster_max = 0.0;
  for (double u = 2.5723; u < 6.0; u += 0.01)
    for (double sign : {1.0, -1.0}) {
      ShipState s;
      s.u = sign * u;
      s.vm = 0.3;
      const auto f = thruster_force(s, {0.2, 1.0, 4.24, -4.24}, model.params, model.coeffs);
      thruster_max = std::max({thruster_max, std::abs(f.X), std::abs(f.Y), std::abs(f.N)});
    }

  ControlSchedule turn;
  turn.segment_duration = 300.0;
  turn.terminal_time = 240.0;
  turn.segments = {{deg_to_rad(20), 1.5, 0, 0}};
  auto end = [&](double dt) { return simulate({0, 3.0, 0, 0, 0, 0}, turn, calm, model, dt).final_state(); };
  const auto e4 = end(4.0), e2 = end(2.0), e1 = end(1.0);
  const double ratio = std::hypot(e4.x0 - e2.x0, e4.y0 - e2.y0) / std::hypot(e2.x0 - e1.x0, e2.y0 - e1.y0);

  report("AC6", equilibrium && mirror_err <= 1e-6 && thruster_max == 0.0 && ratio >= 12 && ratio <= 20,
         std::string("equilibrium ") + (equilibrium ? "exact" : "broken") +
             fmt(", mirror error %.1e, thrust above threshold %.1e, RK4 ratio %.2f", mirror_err, thruster_max,
                 ratio));
}

// ---- AC7: end-to-end planning

struct Batch {
  int successes = 0;
  int runs = 0;
  double seconds = 0.0;
};

Batch plan_batch(const std::string& name, long budget, int seeds) {
  Batch b;
  const auto t0 = std::chrono::steady_clock::now();
  for (int seed = 1; seed <= seeds; ++seed) {
    auto sc = builtin(name);
    sc.optimizer.seed = static_cast<std::uint64_t>(seed);
    sc.optimizer.max_evaluations = budget;
    sc.optimizer.threads = 0;
    const auto r = plan(sc);
    ++b.runs;
    b.successes += r.breakdown.feasible;
    std::printf("  %s seed %d: J = %.4g, C = %.3g, t_f = %.1f s, feasible = %s\n", name.c_str(), seed,
                r.breakdown.J, r.breakdown.C, r.breakdown.t_f, r.breakdown.feasible ? "yes" : "no");
    std::fflush(stdout);
  }
  b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

void ac7() {
  const auto straight = plan_batch("straight_berth", 20000, 10);
  const auto nanko = plan_batch("nanko_berth", 100000, 3);
  report("AC7", straight.successes >= 7 && nanko.successes >= 1,
         fmt("straight_berth %.0f/10 feasible (%.0f s), ", straight.successes, straight.seconds) +
             fmt("nanko_berth %.0f/3 feasible (%.0f s)", nanko.successes, nanko.seconds));
}

// ---- AC8: waypoint contribution

Trajectory straight_line(double tf) {
  Trajectory t;
  for (int k = 0; k <= static_cast<int>(tf); ++k) {
    t.times.push_back(k);
    t.states.push_back({-1000.0 + 1000.0 * k / tf, 0, 0, 0, 0, 0});
    t.penalties.push_back(0.0);
  }
  return t;
}

void ac8() {
  auto sc = builtin("straight_berth");
  sc.obstacles.clear();
  sc.x_des = {0, 0, 0, 0, 0, 0};
  sc.waypoints = {{-800.0, 30.0, 75.0}, {-500.0, -60.0, 75.0}, {-100.0, 0.0, 75.0}};
  const double tf = 800.0;
  const auto traj = straight_line(tf);
  const double w1 = sc.weights.w_dim[0];
  const auto hit = score_trajectory(traj, sc);
  StateVector zero{};
  const double J1 = terminal_penalty(zero, sc.mode, sc.tol, sc.weights);
  const double expected_wp = 3 * w1 * 75.0 * 75.0;
  const double err_hit = std::abs(hit.J1 + hit.J_WP - (J1 + expected_wp));

  sc.waypoints[1].y0 = -300.0;
  const auto miss = score_trajectory(traj, sc);
  const double rise = miss.J - hit.J;
  const double expected_rise = w1 * (300.0 * 300.0 - 75.0 * 75.0) * tf;
  const double err_rise = std::abs(rise - expected_rise) / expected_rise;
  report("AC8", err_hit <= 1e-12 * expected_wp && err_rise <= 1e-12,
         fmt("J_WP = %.6f (expected %.6f), rise %.6f", hit.J_WP, expected_wp, rise) +
             fmt(" (expected %.6f)", expected_rise));
}

// ---- AC9: wind model structure

void ac9() {
  const auto model = builtin("nanko_berth").model;
  const auto& p = model.params;
  const auto& c = model.coeffs;
  double calm = 0.0, head = 0.0, scale = 0.0;
  for (double g = 0.0; g < 2 * kPi; g += 0.05) {
    const auto f = wind_force(ApparentWind{0.0, g}, p, c);
    calm = std::max({calm, std::abs(f.X), std::abs(f.Y), std::abs(f.N)});
  }
  for (double U = 0.5; U < 30.0; U += 0.5) {
    const auto f = wind_force(ApparentWind{U, 0.0}, p, c);
    const auto ref = wind_force(ApparentWind{U, kPi / 2}, p, c);
    head = std::max({head, std::abs(f.Y) / std::abs(ref.Y), std::abs(f.N) / std::abs(ref.N)});
  }
  for (double g = 0.05; g < 2 * kPi; g += 0.1) {
    const auto f1 = wind_force(ApparentWind{4.0, g}, p, c);
    const auto f3 = wind_force(ApparentWind{12.0, g}, p, c);
    const double base = std::max({std::abs(f1.X), std::abs(f1.Y), std::abs(f1.N / p.L_OA)});
    for (auto [a, b] : {std::pair{f1.X, f3.X}, {f1.Y, f3.Y}, {f1.N / p.L_OA, f3.N / p.L_OA}})
      scale = std::max(scale, std::abs(b - 9.0 * a) / (9.0 * base));
  }
  report("AC9", calm == 0.0 && head <= 1e-12 && scale <= 1e-12,
         fmt("|F(U_A = 0)| = %.1e, head-wind side/yaw ratio %.1e, U_A^2 scaling error %.1e", calm, head, scale));
}

}  // namespace

int main(int argc, char** argv) {
  bool skip_planning = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--skip-planning") skip_planning = true;
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  if (skip_planning)
    std::printf("AC7 SKIPPED  (--skip-planning)\n");
  else
    ac7();
  ac8();
  ac9();
  std::printf("%d criteria failed\n", failures);
  return failures;
}
