#include "berth/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace berth {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Maps a data rectangle onto a pixel panel; y grows upward in data space.
struct Frame {
  double x0, y0, w, h;                 // panel in pixels
  double xmin, xmax, ymin, ymax;       // data range

  double X(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double Y(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void pad_range(double& lo, double& hi, double frac = 0.05) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) {
    const double c = 0.5 * (lo + hi);
    const double d = std::max(1.0, std::abs(c) * 0.1);
    lo = c - d;
    hi = c + d;
    return;
  }
  const double d = (hi - lo) * frac;
  lo -= d;
  hi += d;
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style,
                     bool closed = false) {
  std::string s = closed ? "<polygon points=\"" : "<polyline points=\"";
  for (const auto& [x, y] : pts) s += px(x) + "," + px(y) + " ";
  s += "\" " + style + "/>\n";
  return s;
}

std::string text(double x, double y, const std::string& t, const std::string& extra = {}) {
  return "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-family=\"sans-serif\" font-size=\"12\" " +
         extra + ">" + t + "</text>\n";
}

std::string svg_open(int w, int h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
         std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
         "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  std::string s = "<rect x=\"" + px(f.x0) + "\" y=\"" + px(f.y0) + "\" width=\"" + px(f.w) +
                  "\" height=\"" + px(f.h) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.xmin + (f.xmax - f.xmin) * i / 4.0;
    const double yv = f.ymin + (f.ymax - f.ymin) * i / 4.0;
    s += text(f.X(xv), f.y0 + f.h + 14, num(std::round(xv * 1000) / 1000), "text-anchor=\"middle\"");
    s += text(f.x0 - 4, f.Y(yv) + 4, num(std::round(yv * 1000) / 1000), "text-anchor=\"end\"");
  }
  s += text(f.x0 + f.w / 2, f.y0 + f.h + 30, xlabel, "text-anchor=\"middle\"");
  s += text(f.x0, f.y0 - 6, ylabel);
  return s;
}

// Series plot panel: step or line.
std::string series_panel(const Frame& frame_in, const std::vector<double>& xs,
                         const std::vector<double>& ys, const std::string& xlabel,
                         const std::string& ylabel, const std::string& color) {
  Frame f = frame_in;
  f.xmin = xs.empty() ? 0.0 : xs.front();
  f.xmax = xs.empty() ? 1.0 : xs.back();
  if (f.xmax <= f.xmin) f.xmax = f.xmin + 1.0;
  f.ymin = std::numeric_limits<double>::infinity();
  f.ymax = -f.ymin;
  for (double y : ys) {
    f.ymin = std::min(f.ymin, y);
    f.ymax = std::max(f.ymax, y);
  }
  pad_range(f.ymin, f.ymax);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(f.X(xs[i]), f.Y(ys[i]));
  return axes(f, xlabel, ylabel) +
         polyline(pts, "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"");
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "# t [s], x0 [m north], y0 [m east], psi [deg], u [m/s], vm [m/s], r [deg/s], "
         "delta [deg], np/nbt/nst [1/s], inst_penalty [m]\n";
  out << "t,x0,y0,psi_deg,u,vm,r_degps,delta_deg,np,nbt,nst,inst_penalty\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& s = traj.states[k];
    const auto& c = traj.controls[k];
    out << num(traj.times[k]) << ',' << num(s.x0) << ',' << num(s.y0) << ','
        << num(rad_to_deg(s.psi)) << ',' << num(s.u) << ',' << num(s.vm) << ','
        << num(rad_to_deg(s.r)) << ',' << num(rad_to_deg(c.delta)) << ',' << num(c.np) << ','
        << num(c.nbt) << ',' << num(c.nst) << ',' << num(traj.penalties[k]) << '\n';
  }
}

void write_controls_csv(std::ostream& out, const ControlSchedule& schedule) {
  out << "# segment times [s], delta [deg], revolutions [1/s]\n";
  out << "segment,t_start,t_end,delta_deg,np,nbt,nst\n";
  for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
    const auto& c = schedule.segments[i];
    const double t0 = i * schedule.segment_duration;
    out << i << ',' << num(t0) << ',' << num(t0 + schedule.segment_duration) << ','
        << num(rad_to_deg(c.delta)) << ',' << num(c.np) << ',' << num(c.nbt) << ',' << num(c.nst)
        << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const std::vector<GenerationRecord>& history) {
  out << "iteration,evaluations,best_J,gap_to_min,step_size,population,restart\n";
  double running = std::numeric_limits<double>::infinity();
  for (const auto& g : history) running = std::min(running, g.best);
  for (const auto& g : history)
    out << g.iteration << ',' << g.evaluations << ',' << num(g.best) << ',' << num(g.best - running)
        << ',' << num(g.sigma) << ',' << g.population << ',' << g.restart << '\n';
}

void write_domain_csv(std::ostream& out, const DomainConfig& cfg, const std::vector<double>& speeds) {
  out << "# ship at the origin heading north; speeds in knots, coordinates in meters\n";
  out << "speed_kn,vertex,x0,y0\n";
  for (double kn : speeds) {
    ShipState s;
    s.u = knots_to_mps(kn);
    const auto v = domain_vertices(s, cfg);
    for (std::size_t i = 0; i < v.size(); ++i)
      out << num(kn) << ',' << i << ',' << num(v[i].x) << ',' << num(v[i].y) << '\n';
  }
}

std::string decision_vector_json(const std::vector<double>& X, int m, double t_c) {
  json j = {{"m", m}, {"t_c", t_c}, {"X", X}};
  return j.dump(2) + "\n";
}

std::vector<double> parse_decision_vector(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("parse failure: ") + e.what(), "schedule");
  }
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("X")) throw Error("missing field", "schedule.X");
    arr = &j.at("X");
  }
  if (!arr->is_array()) throw Error("expected an array of numbers", "schedule");
  std::vector<double> X;
  for (const auto& v : *arr) {
    if (!v.is_number()) throw Error("expected an array of numbers", "schedule");
    X.push_back(v.get<double>());
  }
  return X;
}

std::string progress_json(const ProgressEvent& e) {
  json j;
  if (e.kind == ProgressEvent::Kind::kIteration) {
    const auto& g = e.generation;
    j = {{"type", "iteration"},      {"iteration", g.iteration}, {"evaluations", g.evaluations},
         {"restart", g.restart},     {"population", g.population}, {"best_J", g.best},
         {"best_ever_J", g.best_ever}, {"step_size", g.sigma}};
  } else {
    const auto& r = e.restart;
    j = {{"type", "restart"},      {"iteration", r.iteration}, {"evaluations", r.evaluations},
         {"trigger", r.trigger}, {"population", r.new_population}};
  }
  return j.dump();
}

std::string report_json(const RunReport& r) {
  const auto& b = r.breakdown;
  json restarts = json::array();
  for (const auto& e : r.restarts)
    restarts.push_back({{"iteration", e.iteration},
                        {"evaluations", e.evaluations},
                        {"trigger", e.trigger},
                        {"population", e.new_population}});
  json j = {{"command", r.command},
            {"scenario", r.scenario},
            {"seed", r.seed},
            {"evaluations", r.evaluations},
            {"wall_time_s", r.wall_time_s},
            {"t_f", b.t_f},
            {"feasible", b.feasible},
            {"objective",
             {{"J", b.J},
              {"terminal_term", b.terminal_term},
              {"collision_term", b.collision_term},
              {"waypoint_term", b.waypoint_term},
              {"J1", b.J1},
              {"J_WP", b.J_WP},
              {"C", b.C},
              {"diverged", b.diverged}}},
            {"terminal_deviation",
             {{"x0", r.terminal_deviation[0]},
              {"u", r.terminal_deviation[1]},
              {"y0", r.terminal_deviation[2]},
              {"vm", r.terminal_deviation[3]},
              {"psi", r.terminal_deviation[4]},
              {"r", r.terminal_deviation[5]}}},
            {"restarts", restarts},
            {"files", r.files}};
  return j.dump(2) + "\n";
}

std::string trajectory_svg(const Trajectory& traj, const Scenario& sc, double interval) {
  // Plot coordinates: east to the right, north up.
  double emin = std::numeric_limits<double>::infinity(), emax = -emin;
  double nmin = emin, nmax = -emin;
  auto grow = [&](double n, double e) {
    emin = std::min(emin, e);
    emax = std::max(emax, e);
    nmin = std::min(nmin, n);
    nmax = std::max(nmax, n);
  };
  for (const auto& s : traj.states) grow(s.x0, s.y0);
  grow(sc.x_des.x0, sc.x_des.y0);
  for (const auto& w : sc.waypoints) grow(w.x0, w.y0);
  // Show the surroundings of the path rather than every far-away polygon.
  const double margin = 2.0 * sc.domain.Lpp + 0.75 * sc.domain.W;
  emin -= margin, emax += margin, nmin -= margin, nmax += margin;
  const double span = std::max(emax - emin, nmax - nmin);
  const double ec = 0.5 * (emin + emax), nc = 0.5 * (nmin + nmax);
  const int size = 800;
  Frame f{60, 30, size - 90.0, size - 90.0, ec - span / 2, ec + span / 2, nc - span / 2,
          nc + span / 2};

  std::string s = svg_open(size, size);
  s += "<defs><clipPath id=\"panel\"><rect x=\"" + px(f.x0) + "\" y=\"" + px(f.y0) + "\" width=\"" +
       px(f.w) + "\" height=\"" + px(f.h) + "\"/></clipPath></defs>\n<g clip-path=\"url(#panel)\">\n";
  for (const auto& poly : sc.obstacles) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : poly.vertices()) pts.emplace_back(f.X(p.y), f.Y(p.x));
    s += polyline(pts, "fill=\"#c8c0b0\" stroke=\"#6b6252\"", true);
  }
  for (const auto& w : sc.waypoints) {
    const double rpx = w.L_tol / (f.xmax - f.xmin) * f.w;
    s += "<circle cx=\"" + px(f.X(w.y0)) + "\" cy=\"" + px(f.Y(w.x0)) + "\" r=\"" + px(rpx) +
         "\" fill=\"none\" stroke=\"#2060c0\" stroke-dasharray=\"6,4\"/>\n";
  }
  double next = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const bool last = k + 1 == traj.size();
    if (traj.times[k] + 1e-9 < next && !last) continue;
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : domain_vertices(traj.states[k], sc.domain)) pts.emplace_back(f.X(p.y), f.Y(p.x));
    s += polyline(pts, "fill=\"#a8d8f0\" fill-opacity=\"0.35\" stroke=\"#4090c0\"", true);
    next += interval;
    while (next <= traj.times[k]) next += interval;
  }
  std::vector<std::pair<double, double>> path;
  for (const auto& st : traj.states) path.emplace_back(f.X(st.y0), f.Y(st.x0));
  s += polyline(path, "fill=\"none\" stroke=\"#c02020\" stroke-width=\"1.5\"");
  s += "<circle cx=\"" + px(f.X(sc.x_des.y0)) + "\" cy=\"" + px(f.Y(sc.x_des.x0)) +
       "\" r=\"4\" fill=\"#208020\"/>\n";
  s += "</g>\n";
  s += axes(f, "y0 (east) [m]", "x0 (north) [m]");
  s += text(f.x0 + f.w, f.y0 - 6, sc.name + ", t_f = " + num(std::round(traj.times.back() * 10) / 10) + " s",
            "text-anchor=\"end\"");
  s += "</svg>\n";
  return s;
}

std::string controls_svg(const Trajectory& traj) {
  const int w = 900, panel_h = 140, gap = 60;
  std::vector<double> t = traj.times;
  struct Series {
    const char* label;
    std::vector<double> v;
    const char* color;
  };
  std::vector<Series> series = {{"delta [deg]", {}, "#c02020"},
                                {"n_P [1/s]", {}, "#2060c0"},
                                {"n_BT [1/s]", {}, "#208020"},
                                {"n_ST [1/s]", {}, "#a06000"},
                                {"u [m/s]", {}, "#444444"},
                                {"r [deg/s]", {}, "#8020a0"}};
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& c = traj.controls[k];
    series[0].v.push_back(rad_to_deg(c.delta));
    series[1].v.push_back(c.np);
    series[2].v.push_back(c.nbt);
    series[3].v.push_back(c.nst);
    series[4].v.push_back(traj.states[k].u);
    series[5].v.push_back(rad_to_deg(traj.states[k].r));
  }
  const int h = static_cast<int>(series.size()) * (panel_h + gap) + 20;
  std::string s = svg_open(w, h);
  for (std::size_t i = 0; i < series.size(); ++i) {
    Frame f{70, 30.0 + i * (panel_h + gap), w - 100.0, static_cast<double>(panel_h), 0, 1, 0, 1};
    s += series_panel(f, t, series[i].v, "t [s]", series[i].label, series[i].color);
  }
  s += "</svg>\n";
  return s;
}

std::string convergence_svg(const std::vector<GenerationRecord>& history) {
  const int w = 900, panel_h = 220, gap = 70;
  std::vector<double> it, logJ, sigma, pop;
  for (const auto& g : history) {
    it.push_back(static_cast<double>(g.iteration));
    logJ.push_back(std::log10(std::max(g.best, 1e-300)));
    sigma.push_back(std::log10(std::max(g.sigma, 1e-300)));
    pop.push_back(g.population);
  }
  std::string s = svg_open(w, 3 * (panel_h + gap) + 20);
  Frame f{70, 30, w - 100.0, static_cast<double>(panel_h), 0, 1, 0, 1};
  s += series_panel(f, it, logJ, "iteration", "log10 best J", "#c02020");
  f.y0 += panel_h + gap;
  s += series_panel(f, it, sigma, "iteration", "log10 step size", "#2060c0");
  f.y0 += panel_h + gap;
  s += series_panel(f, it, pop, "iteration", "population", "#208020");
  s += "</svg>\n";
  return s;
}

std::string domain_svg(const DomainConfig& cfg, const std::vector<double>& speeds) {
  const int size = 600;
  const double ext = 0.75 * cfg.W + 0.1 * cfg.Lpp;
  Frame f{60, 30, size - 90.0, size - 90.0, -ext, ext, -ext, ext};
  std::string s = svg_open(size, size);
  // Hull outline as a rectangle for scale.
  std::vector<std::pair<double, double>> hull = {
      {f.X(-cfg.B / 2), f.Y(cfg.Lpp / 2)}, {f.X(cfg.B / 2), f.Y(cfg.Lpp / 2)},
      {f.X(cfg.B / 2), f.Y(-cfg.Lpp / 2)}, {f.X(-cfg.B / 2), f.Y(-cfg.Lpp / 2)}};
  s += polyline(hull, "fill=\"#888\" stroke=\"none\"", true);
  for (double kn : speeds) {
    ShipState st;
    st.u = knots_to_mps(kn);
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : domain_vertices(st, cfg)) {
      pts.emplace_back(f.X(p.y), f.Y(p.x));
      s += "<circle cx=\"" + px(f.X(p.y)) + "\" cy=\"" + px(f.Y(p.x)) + "\" r=\"2.5\" fill=\"#2060c0\"/>\n";
    }
    s += polyline(pts, "fill=\"none\" stroke=\"#2060c0\"", true);
    if (!pts.empty()) s += text(pts[0].first + 4, pts[0].second - 4, num(kn) + " kn");
  }
  s += axes(f, "y [m]", "x [m]");
  s += "</svg>\n";
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file", path.string());
  out << text;
  if (!out) throw Error("write failed", path.string());
}

}  // namespace berth
