#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwfapf/supervisor.hpp"
#include "mwfapf/world.hpp"

namespace mwfapf {

struct SimParams {
  double dt = 0.05;
  int max_steps = 20000;
  double goal_tol = 0.2;
  double radius = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Every tunable of a run.
struct Params {
  SensorConfig sensors = SensorConfig::default8();
  ApfParams apf;
  WfmParams wfm;
  MemoryThresholds memory;
  SupervisorParams supervisor;
  SimParams sim;

  /// Checks each block plus the cross-block constraint d_c <= max_range.
  void validate() const;
};

struct RobotState {
  Point2 position = Point2::Zero();
  double heading = 0.0;
  Vector2 velocity = Vector2::Zero();
  double radius = 0.2;
  double clock = 0.0;
};

struct StepRecord {
  int tick = 0;
  double t = 0.0;
  Point2 position = Point2::Zero();
  Vector2 velocity = Vector2::Zero();
  Mode mode = Mode::APF;
  ForceVector force = ForceVector::Zero();
  double min_reading = 0.0;
  bool keyframe = false;
  std::string event;  ///< "APF>WFM:local_minimum", "goal_reached", ... or empty
};

enum class OutcomeKind { GoalReached, MaxStepsExceeded, Collision };

std::string_view to_string(OutcomeKind k);

struct RunOutcome {
  OutcomeKind kind = OutcomeKind::MaxStepsExceeded;
  int final_tick = 0;
  double path_length = 0.0;
};

struct RunResult {
  RunOutcome outcome;
  std::vector<StepRecord> records;
  TrajectoryMemory memory;
  int switches = 0;
};

/// Sense, arbitrate, command and integrate at a fixed step until the goal is
/// reached, the robot disc touches a wall, or max_steps ticks have elapsed.
/// Throws std::invalid_argument for inconsistent parameters or a start pose
/// that already collides.
RunResult run(const World& world, const Params& params, Policy policy);

/// Smallest distance from the recorded positions to any wall, minus radius.
double clearance(const World& world, const std::vector<StepRecord>& records, double radius);

/// True when the disc of the given radius touches or overlaps a wall.
bool disc_collides(const World& world, const Point2& center, double radius);

}  // namespace mwfapf
