#include "mwfapf/world.hpp"

#include <limits>
#include <sstream>

namespace mwfapf {

namespace {

bool polygon_is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if ((a - b).norm() <= kGeomEps) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      // Neighbouring edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const Point2& c = poly[j];
      const Point2& d = poly[(j + 1) % n];
      if ((c - d).norm() <= kGeomEps) return false;
      if (segments_intersect(Segment2(a, b), Segment2(c, d))) return false;
    }
  }
  return true;
}

std::string fmt_point(const Point2& p) {
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ")";
  return os.str();
}

}  // namespace

bool point_in_polygon(const Polygon& poly, const Point2& p) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= kGeomEps) return true;
  }
  // Winding number.
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double side = cross<double>(b - a, p - a);
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && side > 0.0) ++winding;
    } else if (b.y() <= p.y() && side < 0.0) {
      --winding;
    }
  }
  return winding != 0;
}

std::vector<Violation> validate_world(const std::vector<Polygon>& obstacles, const Bounds& bounds,
                                      const Point2& start, const Point2& goal) {
  std::vector<Violation> out;
  auto finite = [](const Point2& p) { return p.allFinite(); };

  if (!finite(bounds.min) || !finite(bounds.max) || bounds.max.x() <= bounds.min.x() ||
      bounds.max.y() <= bounds.min.y()) {
    out.push_back({"bounds_non_empty", "bounds max must exceed min on both axes"});
  }
  if (!finite(start) || !finite(goal)) {
    out.push_back({"finite_coordinates", "start and goal must be finite"});
    return out;
  }
  if (!bounds.contains(start)) out.push_back({"start_within_bounds", fmt_point(start)});
  if (!bounds.contains(goal)) out.push_back({"goal_within_bounds", fmt_point(goal)});

  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const Polygon& poly = obstacles[k];
    const std::string which = "obstacle " + std::to_string(k);
    if (poly.size() < 3) {
      out.push_back({"polygon_min_vertices", which + " has " + std::to_string(poly.size()) +
                                                 " vertices, need at least 3"});
      continue;
    }
    bool ok = true;
    for (const Point2& v : poly) {
      if (!finite(v)) {
        out.push_back({"finite_coordinates", which + " has a non-finite vertex"});
        ok = false;
        break;
      }
      if (!bounds.contains(v)) {
        out.push_back({"polygon_within_bounds", which + " vertex " + fmt_point(v)});
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (!polygon_is_simple(poly)) {
      out.push_back({"polygon_simple", which + " self-intersects or repeats a vertex"});
      continue;
    }
    if (point_in_polygon(poly, start)) out.push_back({"start_outside_obstacles", which});
    if (point_in_polygon(poly, goal)) out.push_back({"goal_outside_obstacles", which});
  }
  return out;
}

World::World(std::vector<Polygon> obstacles, Bounds bounds, Point2 start, Point2 goal)
    : obstacles_(std::move(obstacles)), bounds_(bounds), start_(start), goal_(goal) {
  const auto violations = validate_world(obstacles_, bounds_, start_, goal_);
  if (!violations.empty()) {
    throw std::invalid_argument("world invariant '" + violations.front().invariant +
                                "' violated: " + violations.front().detail);
  }
  for (const Polygon& poly : obstacles_) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      edges_.emplace_back(poly[i], poly[(i + 1) % poly.size()]);
    }
  }
  const Point2 lo = bounds_.min;
  const Point2 hi = bounds_.max;
  edges_.emplace_back(lo, Point2(hi.x(), lo.y()));
  edges_.emplace_back(Point2(hi.x(), lo.y()), hi);
  edges_.emplace_back(hi, Point2(lo.x(), hi.y()));
  edges_.emplace_back(Point2(lo.x(), hi.y()), lo);
}

double World::ray_cast(const Point2& origin, const Vector2& direction, double max_range) const {
  if (!direction.allFinite() || std::abs(direction.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("ray_cast: direction must be a unit vector");
  }
  if (!(max_range > 0.0)) throw std::invalid_argument("ray_cast: max_range must be positive");

  double best = max_range;
  for (const Segment2& e : edges_) {
    const double s = ray_segment_hit(origin, direction, e.a(), e.b());
    if (s >= 0.0 && s < best) best = s;
  }
  return best;
}

bool World::point_in_obstacle(const Point2& p) const {
  for (const Polygon& poly : obstacles_) {
    if (point_in_polygon(poly, p)) return true;
  }
  return false;
}

double World::nearest_edge_distance(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment2& e : edges_) best = std::min(best, point_segment_distance(p, e.a(), e.b()));
  return best;
}

}  // namespace mwfapf
