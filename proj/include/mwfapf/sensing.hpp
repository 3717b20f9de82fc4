#pragma once

#include <random>
#include <vector>

#include "mwfapf/world.hpp"

namespace mwfapf {

/// Lowest reading a rangefinder can report (meters).
inline constexpr double kMinReading = 0.01;

struct SensorConfig {
  std::vector<double> mount_angles;  ///< radians in the robot frame, each in [-pi, pi)
  double max_range = 4.0;
  double noise_sigma = 0.0;

  /// Eight rangefinders at k * pi/4 covering the full circle.
  static SensorConfig default8(double max_range = 4.0);
  /// Five forward-facing rangefinders at -90, -45, 0, 45 and 90 degrees.
  static SensorConfig uav5(double max_range = 4.0);

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  std::size_t size() const { return mount_angles.size(); }
};

struct SensorScan {
  std::vector<double> readings;
};

/// Deterministic noise source; one per run.
using RandomStream = std::mt19937_64;

SensorScan scan(const World& world, const Point2& position, double heading,
                const SensorConfig& config, RandomStream& rng);

/// World-frame unit direction of sensor i.
inline Vector2 sensor_direction(double heading, const SensorConfig& config, std::size_t i) {
  return unit_from_angle(heading + config.mount_angles[i]);
}

/// Obstacle points of the unsaturated readings, in sensor order.
std::vector<Point2> obstacle_points(const SensorScan& scan, const Point2& position, double heading,
                                    const SensorConfig& config);

}  // namespace mwfapf
