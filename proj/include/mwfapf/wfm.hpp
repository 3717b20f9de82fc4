#pragma once

#include <optional>
#include <utility>

#include "mwfapf/memory.hpp"
#include "mwfapf/sensing.hpp"
#include "mwfapf/types.hpp"

namespace mwfapf {

struct PidGains {
  double kp = 2.0;
  double ki = 0.1;
  double kd = 0.5;
};

struct WfmParams {
  double d_wall = 0.5;          ///< standoff distance
  double v_tangent_mag = 0.5;   ///< speed along the wall
  PidGains pid;
  double integral_limit = 1.0;  ///< anti-windup bound on the error integral
  double coast_time = 1.0;      ///< seconds to keep the last tangent once the wall is lost
  double follow_range = 2.0;    ///< hits farther than this never define the followed wall

  void validate() const;
};

struct PidState {
  double integral = 0.0;
  double prev_error = 0.0;
  bool primed = false;

  void reset() { *this = PidState{}; }
};

struct WallEstimate {
  Vector2 tangent;   ///< unit, world frame, unoriented
  Vector2 normal;    ///< unit, from the wall toward the robot
  double distance;   ///< true perpendicular distance from the robot
  std::pair<std::size_t, std::size_t> source_pair;
};

/// Half the perpendicular distance from the sensor origin to the line through
/// the two hit points, as a function of the readings and their separation.
double pair_distance(double d_i, double d_j, double theta_ij);

/// Nearest wall seen by a pair of unsaturated sensors less than pi/2 apart.
std::optional<WallEstimate> estimate_wall(const SensorScan& scan, const Point2& position,
                                          double heading, const SensorConfig& config);

/// Fallback when no sensor pair sees a wall: treats the closest single hit as a
/// corner and returns the circle tangent around it. Used to wrap convex corners.
std::optional<WallEstimate> estimate_corner(const SensorScan& scan, double heading,
                                            const SensorConfig& config);

/// The pair-based wall, unless the closest single hit lies clearly nearer than
/// that line (a convex corner or a line through two different faces), in which
/// case the corner estimate. Empty when nothing is in range.
std::optional<WallEstimate> estimate_surface(const SensorScan& scan, const Point2& position,
                                             double heading, const SensorConfig& config);

/// Copy of the scan with readings beyond follow_range reported as saturated.
/// When a followed side is given, rays strictly on the opposite side of the
/// moving direction are saturated too.
SensorScan following_view(const SensorScan& scan, double heading, const SensorConfig& config,
                          double follow_range,
                          std::optional<std::pair<Vector2, FollowDirection>> side = {});

/// Tangent oriented so the wall lies on the requested side of the motion.
Vector2 oriented_tangent(const WallEstimate& wall, FollowDirection direction);

/// Tangent speed along the oriented tangent plus a PID-regulated normal
/// component holding the standoff. Updates pid.
Vector2 wfm_velocity(const WallEstimate& wall, FollowDirection direction, const WfmParams& params,
                     PidState& pid, double dt);

/// Flips the direction last used near this position; otherwise picks the side
/// making more progress toward the goal (Left on a tie).
FollowDirection choose_direction(const Point2& position, const TrajectoryMemory& memory,
                                 const Point2& goal, const WallEstimate& wall, double d_th);

/// The goal-progress rule alone, without memory.
FollowDirection progress_direction(const Point2& position, const Point2& goal,
                                   const WallEstimate& wall);

}  // namespace mwfapf
