#pragma once

#include <string>
#include <vector>

#include "mwfapf/geometry.hpp"

namespace mwfapf {

/// Closed vertex loop; the closing edge back to the first vertex is implicit.
using Polygon = std::vector<Point2>;

struct Bounds {
  Point2 min{0.0, 0.0};
  Point2 max{0.0, 0.0};

  bool contains(const Point2& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
  double perimeter() const { return 2.0 * ((max.x() - min.x()) + (max.y() - min.y())); }
};

/// One violated world invariant, named so tools can report it.
struct Violation {
  std::string invariant;
  std::string detail;
};

/// Checks every world invariant without throwing.
std::vector<Violation> validate_world(const std::vector<Polygon>& obstacles, const Bounds& bounds,
                                      const Point2& start, const Point2& goal);

/// Static polygonal environment. Immutable once constructed; the bounds
/// rectangle behaves as a wall for rays, clearance and collisions.
class World {
 public:
  /// Throws std::invalid_argument naming the first violated invariant.
  World(std::vector<Polygon> obstacles, Bounds bounds, Point2 start, Point2 goal);

  const std::vector<Polygon>& obstacles() const { return obstacles_; }
  const Bounds& bounds() const { return bounds_; }
  const Point2& start() const { return start_; }
  const Point2& goal() const { return goal_; }

  /// All obstacle edges followed by the four bounds edges.
  const std::vector<Segment2>& edges() const { return edges_; }

  /// Distance to the first obstacle or bounds edge along the ray, saturated at
  /// max_range. Throws std::invalid_argument for a non-unit direction.
  double ray_cast(const Point2& origin, const Vector2& direction, double max_range) const;

  /// True when p is inside or on the boundary of some obstacle polygon.
  bool point_in_obstacle(const Point2& p) const;

  /// Distance from p to the nearest obstacle or bounds edge.
  double nearest_edge_distance(const Point2& p) const;

 private:
  std::vector<Polygon> obstacles_;
  Bounds bounds_;
  Point2 start_;
  Point2 goal_;
  std::vector<Segment2> edges_;
};

bool point_in_polygon(const Polygon& poly, const Point2& p);

}  // namespace mwfapf
