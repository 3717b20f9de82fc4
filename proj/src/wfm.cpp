#include "mwfapf/wfm.hpp"

#include <algorithm>
#include <limits>

namespace mwfapf {

namespace {

// Pairs exactly a quarter turn apart are excluded; the slack absorbs rounding
// in the mount-angle difference.
constexpr double kMaxPairSeparation = kPi / 2.0 - 1e-9;

// A single hit this much closer than the best pair line is a convex corner the
// pairs cannot see.
constexpr double kCornerPreference = 0.95;

// Relative dot-product band treated as a tie by the goal-progress rule.
constexpr double kTieTolerance = 1e-3;

}  // namespace

void WfmParams::validate() const {
  if (!(d_wall > 0.0)) throw std::invalid_argument("wfm: d_wall must be positive");
  if (!(v_tangent_mag > 0.0)) throw std::invalid_argument("wfm: v_tangent must be positive");
  if (pid.kp < 0.0 || pid.ki < 0.0 || pid.kd < 0.0) {
    throw std::invalid_argument("wfm: PID gains must be non-negative");
  }
  if (!(integral_limit >= 0.0)) throw std::invalid_argument("wfm: integral_limit must be >= 0");
  if (!(coast_time >= 0.0)) throw std::invalid_argument("wfm: coast_time must be >= 0");
  if (!(follow_range > d_wall)) throw std::invalid_argument("wfm: follow_range must exceed d_wall");
}

double pair_distance(double d_i, double d_j, double theta_ij) {
  const double base = std::sqrt(d_i * d_i + d_j * d_j - 2.0 * d_i * d_j * std::cos(theta_ij));
  return 0.5 * d_i * d_j * std::sin(theta_ij) / base;
}

std::optional<WallEstimate> estimate_wall(const SensorScan& scan, const Point2& position,
                                          double heading, const SensorConfig& config) {
  const std::size_t n = scan.readings.size();
  double best = std::numeric_limits<double>::infinity();
  std::optional<std::pair<std::size_t, std::size_t>> best_pair;

  for (std::size_t i = 0; i < n; ++i) {
    if (scan.readings[i] >= config.max_range) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (scan.readings[j] >= config.max_range) continue;
      const double sep = std::abs(wrap_angle(config.mount_angles[j] - config.mount_angles[i]));
      if (!(sep < kMaxPairSeparation)) continue;
      const double d = pair_distance(scan.readings[i], scan.readings[j], sep);
      if (d < best) {
        best = d;
        best_pair = std::make_pair(i, j);
      }
    }
  }
  if (!best_pair) return std::nullopt;

  const auto [i, j] = *best_pair;
  const Point2 pi = position + scan.readings[i] * sensor_direction(heading, config, i);
  const Point2 pj = position + scan.readings[j] * sensor_direction(heading, config, j);
  const Vector2 tangent = (pj - pi).normalized();
  Vector2 normal = rot90(tangent);
  double offset = normal.dot(position - pi);
  if (offset < 0.0) {
    normal = -normal;
    offset = -offset;
  }
  return WallEstimate{tangent, normal, offset, *best_pair};
}

std::optional<WallEstimate> estimate_corner(const SensorScan& scan, double heading,
                                            const SensorConfig& config) {
  std::optional<std::size_t> nearest;
  for (std::size_t i = 0; i < scan.readings.size(); ++i) {
    if (scan.readings[i] >= config.max_range) continue;
    if (!nearest || scan.readings[i] < scan.readings[*nearest]) nearest = i;
  }
  if (!nearest) return std::nullopt;
  const Vector2 normal = -sensor_direction(heading, config, *nearest);
  return WallEstimate{rot90(normal), normal, scan.readings[*nearest],
                      std::make_pair(*nearest, *nearest)};
}

SensorScan following_view(const SensorScan& scan, double heading, const SensorConfig& config,
                          double follow_range,
                          std::optional<std::pair<Vector2, FollowDirection>> side) {
  SensorScan out = scan;
  for (std::size_t i = 0; i < out.readings.size(); ++i) {
    bool drop = out.readings[i] > follow_range;
    if (side) {
      const double sign = side->second == FollowDirection::Left ? 1.0 : -1.0;
      drop = drop || sign * cross(side->first, sensor_direction(heading, config, i)) < -1e-9;
    }
    if (drop) out.readings[i] = config.max_range;
  }
  return out;
}

std::optional<WallEstimate> estimate_surface(const SensorScan& scan, const Point2& position,
                                             double heading, const SensorConfig& config) {
  const auto wall = estimate_wall(scan, position, heading, config);
  const auto corner = estimate_corner(scan, heading, config);
  if (wall && corner && corner->distance < kCornerPreference * wall->distance) return corner;
  return wall ? wall : corner;
}

Vector2 oriented_tangent(const WallEstimate& wall, FollowDirection direction) {
  const Vector2 left = rot90(wall.normal);
  return direction == FollowDirection::Left ? left : Vector2(-left);
}

Vector2 wfm_velocity(const WallEstimate& wall, FollowDirection direction, const WfmParams& params,
                     PidState& pid, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("wfm_velocity: dt must be positive");
  const double error = wall.distance - params.d_wall;
  pid.integral = std::clamp(pid.integral + error * dt, -params.integral_limit,
                            params.integral_limit);
  const double derivative = pid.primed ? (error - pid.prev_error) / dt : 0.0;
  pid.prev_error = error;
  pid.primed = true;

  const double u = std::clamp(
      params.pid.kp * error + params.pid.ki * pid.integral + params.pid.kd * derivative,
      -params.v_tangent_mag, params.v_tangent_mag);
  // Positive error means too far out: move against the normal, toward the wall.
  return params.v_tangent_mag * oriented_tangent(wall, direction) - u * wall.normal;
}

FollowDirection progress_direction(const Point2& position, const Point2& goal,
                                   const WallEstimate& wall) {
  const Vector2 to_goal = goal - position;
  const double left = oriented_tangent(wall, FollowDirection::Left).dot(to_goal);
  if (std::abs(left) <= kTieTolerance * to_goal.norm()) return FollowDirection::Left;
  return left > 0.0 ? FollowDirection::Left : FollowDirection::Right;
}

FollowDirection choose_direction(const Point2& position, const TrajectoryMemory& memory,
                                 const Point2& goal, const WallEstimate& wall, double d_th) {
  if (const KeyFrame* prior = memory.latest_tagged_near(position, d_th)) {
    return opposite(*prior->wfm_direction);
  }
  return progress_direction(position, goal, wall);
}

}  // namespace mwfapf
