#include "mwfapf/sensing.hpp"

#include <algorithm>

namespace mwfapf {

SensorConfig SensorConfig::default8(double max_range) {
  SensorConfig c;
  for (int k = 0; k < 8; ++k) c.mount_angles.push_back(wrap_angle(k * kPi / 4.0));
  c.max_range = max_range;
  return c;
}

SensorConfig SensorConfig::uav5(double max_range) {
  SensorConfig c;
  c.mount_angles = {-kPi / 2.0, -kPi / 4.0, 0.0, kPi / 4.0, kPi / 2.0};
  c.max_range = max_range;
  return c;
}

void SensorConfig::validate() const {
  if (mount_angles.empty()) throw std::invalid_argument("sensors: at least one mount angle");
  for (std::size_t i = 0; i < mount_angles.size(); ++i) {
    const double a = mount_angles[i];
    if (!std::isfinite(a) || a < -kPi || a >= kPi) {
      throw std::invalid_argument("sensors: mount angle outside [-pi, pi)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(mount_angles[j] - a) <= 1e-12) {
        throw std::invalid_argument("sensors: mount angles must be pairwise distinct");
      }
    }
  }
  if (!(max_range > 0.0)) throw std::invalid_argument("sensors: max_range must be positive");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("sensors: noise_sigma must be >= 0");
}

SensorScan scan(const World& world, const Point2& position, double heading,
                const SensorConfig& config, RandomStream& rng) {
  SensorScan out;
  out.readings.reserve(config.size());
  std::normal_distribution<double> noise(0.0, config.noise_sigma);
  for (std::size_t i = 0; i < config.size(); ++i) {
    double d = world.ray_cast(position, sensor_direction(heading, config, i), config.max_range);
    if (config.noise_sigma > 0.0) d += noise(rng);
    out.readings.push_back(std::clamp(d, kMinReading, config.max_range));
  }
  return out;
}

std::vector<Point2> obstacle_points(const SensorScan& scan, const Point2& position, double heading,
                                    const SensorConfig& config) {
  std::vector<Point2> points;
  for (std::size_t i = 0; i < scan.readings.size(); ++i) {
    const double d = scan.readings[i];
    if (d >= config.max_range) continue;
    points.push_back(position + d * sensor_direction(heading, config, i));
  }
  return points;
}

}  // namespace mwfapf
