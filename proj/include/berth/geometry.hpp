#pragma once

// Polygon primitives, the speed-dependent elliptical ship domain and the
// instantaneous penetration penalty of domain vertices into obstacles.

#include <span>
#include <vector>

#include "berth/core.hpp"

namespace berth {

/// World-frame point: x = north (x0), y = east (y0), meters.
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  bool contains(const Point& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

/// Simple, closed (implicitly) polygon. Construction validates the vertex
/// list once; queries assume validity.
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  const BoundingBox& bbox() const { return bbox_; }
  std::size_t size() const { return vertices_.size(); }
  double signed_area() const;

  bool operator==(const Polygon& o) const { return vertices_ == o.vertices_; }

 private:
  std::vector<Point> vertices_;
  BoundingBox bbox_;
};

/// Describes why a vertex list is not a valid polygon, or empty if it is.
std::string polygon_defect(std::span<const Point> vertices);

using ObstacleSet = std::vector<Polygon>;

/// Boundary points count as inside.
bool point_in_polygon(const Point& p, const Polygon& poly);

double distance_to_segment(const Point& p, const Point& a, const Point& b);

/// Distance from p to the nearest edge when p is inside (or on) poly, else 0.
double penetration_length(const Point& p, const Polygon& poly);

/// Ship domain sizing. Built through make_domain_config, which derives the
/// margin limits from the minimum passage width W and the ship dimensions.
struct DomainConfig {
  double W = 0.0;
  double U_min = 0.0;
  double U_max = 0.0;
  int n_vertices = 13;
  double Lpp = 0.0;
  double B = 0.0;
  // derived
  double L_x_max_L = 0.0;  // 0.75 W - 0.5 Lpp
  double L_x_max_S = 0.0;  // 0.5 W - 0.5 Lpp
  double L_y_max = 0.0;    // 0.25 W - 0.5 B
  double L_x_min = 0.0;    // 0.25 Lpp
  double L_y_min = 0.0;    // B

  bool operator==(const DomainConfig&) const = default;
};

DomainConfig make_domain_config(double W, double Lpp, double B, double U_min, double U_max,
                                int n_vertices = 13);
/// Computes the derived margins without validating them.
DomainConfig derive_domain_config(double W, double Lpp, double B, double U_min, double U_max,
                                  int n_vertices = 13);
void validate(const DomainConfig& cfg);

struct DomainMargins {
  double fore = 0.0;
  double aft = 0.0;
  double lateral = 0.0;
};

/// Margins clamped-linear in U over [U_min, U_max]. The long longitudinal
/// margin goes forward when sign_u >= 0 and aft otherwise.
DomainMargins domain_margins(double U, double sign_u, const DomainConfig& cfg);

/// Boundary vertices at alpha_i = 2 pi i / n (i = 0..n-1, clockwise from the
/// bow), world frame.
std::vector<Point> domain_vertices(const ShipState& state, const DomainConfig& cfg);

/// Writes the same vertices into `out` (size n_vertices) without allocating.
void domain_vertices_into(const ShipState& state, const DomainConfig& cfg, std::span<Point> out);

/// Sum over obstacles and domain vertices of the penetration length.
double instantaneous_penalty(const ShipState& state, const ObstacleSet& obstacles,
                             const DomainConfig& cfg);

/// Same sum for precomputed vertices.
double vertex_penalty(std::span<const Point> vertices, const ObstacleSet& obstacles);

}  // namespace berth
