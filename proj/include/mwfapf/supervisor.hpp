#pragma once

#include <optional>
#include <string_view>

#include "mwfapf/apf.hpp"
#include "mwfapf/memory.hpp"
#include "mwfapf/wfm.hpp"

namespace mwfapf {

/// Arbitration strategy between the two controllers.
///  - Full: history checked in both modes (local minimum or revisit enters
///    wall following; leaving it needs the goal behind and a clear goal line).
///  - Memoryless: force-threshold entry, tangent-angle exit, nothing else.
///  - WfmMemoryOnly: Memoryless plus the goal-line history check on exit and
///    direction flipping at revisited spots.
///  - ApfOnly: the supervisor never leaves potential-field mode.
enum class Policy { Full, Memoryless, WfmMemoryOnly, ApfOnly };

std::string_view to_string(Policy p);
/// Accepts full, memoryless, wfm-memory and apf-only.
std::optional<Policy> parse_policy(std::string_view name);

/// Why a mode switch fired.
enum class SwitchCause { None, LocalMinimum, Revisit, GoalBehind, WallLost };

std::string_view to_string(SwitchCause c);

struct SupervisorParams {
  double hysteresis_time = 0.5;  ///< minimum dwell between switches (s)
  /// How long the goal must stay behind before wall following is abandoned (s).
  double goal_behind_time = 1.0;
  /// Only leave a wall when the goal lies on the robot's side of it.
  bool require_free_side = true;

  void validate() const;
};

struct SupervisorState {
  Mode mode = Mode::APF;
  Policy policy = Policy::Full;
  FollowDirection direction = FollowDirection::Left;
  double theta_goal = 0.0;
  std::optional<double> theta_0;          ///< oriented wall tangent heading, WFM only
  std::optional<Vector2> last_tangent;    ///< oriented, kept while coasting
  int ticks_since_switch = 1 << 20;  // no recent switch
  int ticks_without_wall = 0;
  int ticks_goal_behind = 0;  ///< consecutive wall-following ticks with the goal behind
  PidState pid;
};

/// Per-tick timing derived from the supervisor and wall-following settings.
struct SwitchLimits {
  int hysteresis_ticks = 10;
  int coast_ticks = 20;
  int goal_behind_ticks = 20;
  bool require_free_side = true;
  double goal_tol = 0.2;
  double d_th = 0.3;
};

/// goal_tol: local minima closer than this to the goal are ignored.
SwitchLimits make_limits(const SupervisorParams& sup, const WfmParams& wfm,
                         const MemoryThresholds& memory, double goal_tol, double dt);

struct SupervisorInputs {
  Point2 position;
  Point2 goal;
  Vector2 heading_direction;  ///< unit vector of the current moving direction
  ForceVector f_total;
  std::optional<WallEstimate> wall;
  double t_now = 0.0;
};

/// True when the goal direction is more than a quarter turn away from the
/// followed tangent.
bool goal_behind(double theta_goal, double theta_0);

/// Leaving wall following. Requires the goal to have been behind the followed
/// tangent for goal_behind_ticks consecutive ticks; Full and WfmMemoryOnly
/// also require the straight line to the goal to miss the stored history.
/// Losing the wall for coast_ticks forces the switch under every policy.
SwitchCause should_switch_to_apf(const SupervisorState& state, const Point2& position,
                                 const Point2& goal, const TrajectoryMemory& memory,
                                 const SwitchLimits& limits);

/// Entering wall following: a local minimum away from the goal, or, under
/// Full only, a revisit of a frame laid down before the last local minimum.
SwitchCause should_switch_to_wfm(const SupervisorState& state, const ForceVector& f_total,
                                 const Point2& position, const Vector2& velocity_direction,
                                 const TrajectoryMemory& memory, double t_now,
                                 double dist_to_goal, const SwitchLimits& limits);

struct SupervisorDecision {
  Mode from = Mode::APF;
  Mode mode = Mode::APF;
  SwitchCause cause = SwitchCause::None;

  bool switched() const { return cause != SwitchCause::None; }
};

/// Evaluates the predicate for the current mode and applies entry actions:
/// wall-following entry picks a direction and resets the PID accumulator.
SupervisorDecision step_supervisor(SupervisorState& state, const SupervisorInputs& in,
                                   const TrajectoryMemory& memory, const SwitchLimits& limits);

}  // namespace mwfapf
