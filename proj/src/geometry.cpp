#include "berth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace berth {

namespace {

constexpr double kOnEdge = 1e-9;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int orientation(const Point& a, const Point& b, const Point& c) {
  const double v = cross(a, b, c);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(q1, p1, p2)) return true;
  if (o2 == 0 && on_segment(q2, p1, p2)) return true;
  if (o3 == 0 && on_segment(p1, q1, q2)) return true;
  if (o4 == 0 && on_segment(p2, q1, q2)) return true;
  return false;
}

double linear_margin(double U, double lo, double hi, const DomainConfig& cfg) {
  if (U > cfg.U_max) return hi;
  if (U < cfg.U_min) return lo;
  // This form is exact at both ends of the ramp.
  const double s = (U - cfg.U_min) / (cfg.U_max - cfg.U_min);
  return (1.0 - s) * lo + s * hi;
}

}  // namespace

std::string polygon_defect(std::span<const Point> v) {
  const std::size_t n = v.size();
  if (n < 3) return "polygon needs at least 3 vertices";
  for (const auto& p : v)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return "polygon has non-finite vertex";
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] == v[(i + 1) % n]) return "polygon has repeated consecutive vertices";

  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    area2 += a.x * b.y - b.x * a.y;
  }
  if (area2 == 0.0) return "polygon has zero area";

  for (std::size_t i = 0; i < n; ++i) {
    const Point& a1 = v[i];
    const Point& a2 = v[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& b1 = v[j];
      const Point& b2 = v[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges share one vertex; they must not fold back onto each other.
        const Point& shared = (j == i + 1) ? a2 : a1;
        const Point& other_a = (j == i + 1) ? a1 : a2;
        const Point& other_b = (j == i + 1) ? b2 : b1;
        if (orientation(other_a, shared, other_b) == 0) {
          const double dot = (other_a.x - shared.x) * (other_b.x - shared.x) +
                             (other_a.y - shared.y) * (other_b.y - shared.y);
          if (dot > 0.0) return "polygon edges overlap";
        }
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) return "polygon is self-intersecting";
    }
  }
  return {};
}

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (auto defect = polygon_defect(vertices_); !defect.empty()) throw Error(defect);
  bbox_ = {vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
  for (const auto& p : vertices_) {
    bbox_.min_x = std::min(bbox_.min_x, p.x);
    bbox_.min_y = std::min(bbox_.min_y, p.y);
    bbox_.max_x = std::max(bbox_.max_x, p.x);
    bbox_.max_y = std::max(bbox_.max_y, p.y);
  }
}

double Polygon::signed_area() const {
  double a = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = vertices_[i];
    const auto& q = vertices_[(i + 1) % n];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = a.x + t * dx - p.x;
  const double ey = a.y + t * dy - p.y;
  return std::sqrt(ex * ex + ey * ey);
}

bool point_in_polygon(const Point& p, const Polygon& poly) {
  if (!poly.bbox().contains(p)) return false;
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = v[i];
    const Point& b = v[j];
    if (distance_to_segment(p, a, b) <= kOnEdge) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double penetration_length(const Point& p, const Polygon& poly) {
  if (!point_in_polygon(p, poly)) return 0.0;
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
    best = std::min(best, distance_to_segment(p, v[j], v[i]));
  return best;
}

DomainConfig make_domain_config(double W, double Lpp, double B, double U_min, double U_max,
                                int n_vertices) {
  auto c = derive_domain_config(W, Lpp, B, U_min, U_max, n_vertices);
  validate(c);
  return c;
}

DomainConfig derive_domain_config(double W, double Lpp, double B, double U_min, double U_max,
                                  int n_vertices) {
  DomainConfig c;
  c.W = W;
  c.U_min = U_min;
  c.U_max = U_max;
  c.n_vertices = n_vertices;
  c.Lpp = Lpp;
  c.B = B;
  c.L_x_max_L = 0.75 * W - 0.5 * Lpp;
  c.L_x_max_S = 0.5 * W - 0.5 * Lpp;
  c.L_y_max = 0.25 * W - 0.5 * B;
  c.L_x_min = 0.25 * Lpp;
  c.L_y_min = B;
  return c;
}

void validate(const DomainConfig& c) {
  if (!(c.Lpp > 0.0) || !(c.B > 0.0)) throw Error("ship dimensions must be positive", "domain");
  if (!(c.U_min >= 0.0) || !(c.U_min < c.U_max)) throw Error("requires 0 <= U_min < U_max", "domain.U_min");
  if (c.n_vertices < 8) throw Error("at least 8 vertices required", "domain.n_vertices");
  if (!(c.L_x_max_L > c.L_x_min))
    throw Error("W too small: 0.75W - 0.5Lpp must exceed 0.25Lpp (W > 4/3 Lpp)", "domain.W");
  if (!(c.L_y_max > c.L_y_min))
    throw Error("W too small: 0.25W - 0.5B must exceed B", "domain.W");
}

DomainMargins domain_margins(double U, double sign_u, const DomainConfig& cfg) {
  const double longm = linear_margin(U, cfg.L_x_min, cfg.L_x_max_L, cfg);
  const double shortm = linear_margin(U, cfg.L_x_min, cfg.L_x_max_S, cfg);
  const double lat = linear_margin(U, cfg.L_y_min, cfg.L_y_max, cfg);
  if (sign_u >= 0.0) return {longm, shortm, lat};
  return {shortm, longm, lat};
}

void domain_vertices_into(const ShipState& s, const DomainConfig& cfg, std::span<Point> out) {
  const double U = std::hypot(s.u, s.vm);
  const auto m = domain_margins(U, s.u, cfg);
  const double a_fore = m.fore + 0.5 * cfg.Lpp;
  const double a_aft = m.aft + 0.5 * cfg.Lpp;
  const double b = m.lateral + 0.5 * cfg.B;
  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  const int n = cfg.n_vertices;
  for (int i = 0; i < n; ++i) {
    const double alpha = 2.0 * kPi * i / n;
    const double ca = std::cos(alpha);
    const double a = ca > 0.0 ? a_fore : a_aft;
    const double px = a * ca;
    const double py = b * std::sin(alpha);
    out[i] = {s.x0 + px * c - py * sn, s.y0 + px * sn + py * c};
  }
}

std::vector<Point> domain_vertices(const ShipState& state, const DomainConfig& cfg) {
  std::vector<Point> v(cfg.n_vertices);
  domain_vertices_into(state, cfg, v);
  return v;
}

double vertex_penalty(std::span<const Point> vertices, const ObstacleSet& obstacles) {
  double total = 0.0;
  for (const auto& poly : obstacles)
    for (const auto& p : vertices) total += penetration_length(p, poly);
  return total;
}

double instantaneous_penalty(const ShipState& state, const ObstacleSet& obstacles,
                             const DomainConfig& cfg) {
  std::vector<Point> v(cfg.n_vertices);
  domain_vertices_into(state, cfg, v);
  return vertex_penalty(v, obstacles);
}

}  // namespace berth
