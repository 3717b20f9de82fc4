#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

namespace mwfapf {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2 = Vec2<double>;
using Vector2 = Vec2<double>;

/// Tolerance used by every orientation and intersection predicate (meters).
inline constexpr double kGeomEps = 1e-9;

inline constexpr double kPi = std::numbers::pi;

/// Directed line segment with distinct endpoints.
class Segment2 {
 public:
  Segment2(const Point2& a, const Point2& b) : a_(a), b_(b) {
    if (!a.allFinite() || !b.allFinite()) {
      throw std::invalid_argument("Segment2: non-finite endpoint");
    }
    if ((a - b).norm() <= kGeomEps) {
      throw std::invalid_argument("Segment2: degenerate segment");
    }
  }

  const Point2& a() const { return a_; }
  const Point2& b() const { return b_; }
  Vector2 direction() const { return b_ - a_; }
  double length() const { return (b_ - a_).norm(); }

 private:
  Point2 a_;
  Point2 b_;
};

/// z-component of the 2D cross product.
template <typename Scalar>
Scalar cross(const Vec2<Scalar>& u, const Vec2<Scalar>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

/// Counter-clockwise rotation by a quarter turn.
template <typename Scalar>
Vec2<Scalar> rot90(const Vec2<Scalar>& v) {
  return Vec2<Scalar>(-v.y(), v.x());
}

template <typename Scalar>
Vec2<Scalar> unit_from_angle(const Scalar& angle) {
  using std::cos;
  using std::sin;
  return Vec2<Scalar>(cos(angle), sin(angle));
}

inline double angle_of(const Vector2& v) { return std::atan2(v.y(), v.x()); }

/// Wraps an angle into [-pi, pi).
inline double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

/// Unsigned angle between two non-zero vectors, in [0, pi].
inline double angle_between(const Vector2& u, const Vector2& v) {
  return std::abs(std::atan2(cross<double>(u, v), u.dot(v)));
}

/// Sign of the turn a -> b -> c: +1 counter-clockwise, -1 clockwise, 0 collinear
/// within kGeomEps (scaled by the lengths involved).
inline int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double area = cross<double>(b - a, c - a);
  const double scale = std::max({(b - a).norm(), (c - a).norm(), 1.0});
  if (std::abs(area) <= kGeomEps * scale) return 0;
  return area > 0.0 ? 1 : -1;
}

/// True when p, known to be collinear with s, lies within its bounding box.
inline bool on_segment(const Segment2& s, const Point2& p) {
  return p.x() <= std::max(s.a().x(), s.b().x()) + kGeomEps &&
         p.x() >= std::min(s.a().x(), s.b().x()) - kGeomEps &&
         p.y() <= std::max(s.a().y(), s.b().y()) + kGeomEps &&
         p.y() >= std::min(s.a().y(), s.b().y()) - kGeomEps;
}

/// Closed-segment intersection: crossings, endpoint touches and collinear
/// overlaps all count.
inline bool segments_intersect(const Segment2& s1, const Segment2& s2) {
  const int o1 = orientation(s1.a(), s1.b(), s2.a());
  const int o2 = orientation(s1.a(), s1.b(), s2.b());
  const int o3 = orientation(s2.a(), s2.b(), s1.a());
  const int o4 = orientation(s2.a(), s2.b(), s1.b());

  if (o1 * o2 < 0 && o3 * o4 < 0) return true;

  if (o1 == 0 && on_segment(s1, s2.a())) return true;
  if (o2 == 0 && on_segment(s1, s2.b())) return true;
  if (o3 == 0 && on_segment(s2, s1.a())) return true;
  return o4 == 0 && on_segment(s2, s1.b());
}

inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Vector2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

/// Parameter along the ray origin + s * dir at which it meets segment [a, b],
/// or a negative value when it misses.
inline double ray_segment_hit(const Point2& origin, const Vector2& dir, const Point2& a,
                              const Point2& b) {
  const Vector2 e = b - a;
  const double denom = cross<double>(dir, e);
  const Vector2 w = a - origin;
  if (std::abs(denom) <= kGeomEps) {
    // Parallel: only a collinear edge can be hit, at its nearest endpoint ahead.
    if (std::abs(cross<double>(w, dir)) > kGeomEps) return -1.0;
    const double sa = w.dot(dir);
    const double sb = (b - origin).dot(dir);
    if (sa < 0.0 && sb < 0.0) return -1.0;
    if (sa < 0.0 || sb < 0.0) return 0.0;
    return std::min(sa, sb);
  }
  const double s = cross<double>(w, e) / denom;
  const double u = cross<double>(w, dir) / denom;
  if (s < -kGeomEps || u < -kGeomEps || u > 1.0 + kGeomEps) return -1.0;
  return std::max(s, 0.0);
}

}  // namespace mwfapf
