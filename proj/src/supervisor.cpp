#include "mwfapf/supervisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mwfapf {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::Full: return "full";
    case Policy::Memoryless: return "memoryless";
    case Policy::WfmMemoryOnly: return "wfm-memory";
    case Policy::ApfOnly: return "apf-only";
  }
  return "full";
}

std::optional<Policy> parse_policy(std::string_view name) {
  for (Policy p : {Policy::Full, Policy::Memoryless, Policy::WfmMemoryOnly, Policy::ApfOnly}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view to_string(SwitchCause c) {
  switch (c) {
    case SwitchCause::None: return "none";
    case SwitchCause::LocalMinimum: return "local_minimum";
    case SwitchCause::Revisit: return "revisit";
    case SwitchCause::GoalBehind: return "goal_behind";
    case SwitchCause::WallLost: return "wall_lost";
  }
  return "none";
}

void SupervisorParams::validate() const {
  if (!(hysteresis_time >= 0.0)) throw std::invalid_argument("supervisor: hysteresis_time >= 0");
  if (!(goal_behind_time >= 0.0)) throw std::invalid_argument("supervisor: goal_behind_time >= 0");
}

namespace {

int to_ticks(double seconds, double dt) {
  // Rounds up; the guard keeps 0.5 s at 0.05 s from becoming 11 ticks.
  return static_cast<int>(std::ceil(seconds / dt - 1e-9));
}

}  // namespace

SwitchLimits make_limits(const SupervisorParams& sup, const WfmParams& wfm,
                         const MemoryThresholds& memory, double goal_tol, double dt) {
  return SwitchLimits{to_ticks(sup.hysteresis_time, dt), to_ticks(wfm.coast_time, dt),
                      to_ticks(sup.goal_behind_time, dt),
                      sup.require_free_side, goal_tol, memory.d_th};
}

bool goal_behind(double theta_goal, double theta_0) {
  return std::abs(wrap_angle(theta_goal - theta_0)) > kPi / 2.0;
}

SwitchCause should_switch_to_apf(const SupervisorState& state, const Point2& position,
                                 const Point2& goal, const TrajectoryMemory& memory,
                                 const SwitchLimits& limits) {
  if (state.policy == Policy::ApfOnly) return SwitchCause::None;
  if (state.ticks_without_wall >= limits.coast_ticks) return SwitchCause::WallLost;
  if (!state.theta_0 || state.ticks_since_switch <= limits.hysteresis_ticks) {
    return SwitchCause::None;
  }

  if (state.ticks_goal_behind < std::max(1, limits.goal_behind_ticks)) return SwitchCause::None;
  if (state.policy != Policy::Memoryless && memory.crosses_history(position, goal)) {
    return SwitchCause::None;
  }
  return SwitchCause::GoalBehind;
}

SwitchCause should_switch_to_wfm(const SupervisorState& state, const ForceVector& f_total,
                                 const Point2& position, const Vector2& velocity_direction,
                                 const TrajectoryMemory& memory, double t_now,
                                 double dist_to_goal, const SwitchLimits& limits) {
  if (state.policy == Policy::ApfOnly) return SwitchCause::None;
  if (state.ticks_since_switch <= limits.hysteresis_ticks) return SwitchCause::None;

  if (f_total.norm() < memory.thresholds().f_th && dist_to_goal > limits.goal_tol) {
    return SwitchCause::LocalMinimum;
  }
  if (state.policy == Policy::Full && memory.find_revisit(position, velocity_direction, t_now)) {
    return SwitchCause::Revisit;
  }
  return SwitchCause::None;
}

SupervisorDecision step_supervisor(SupervisorState& state, const SupervisorInputs& in,
                                   const TrajectoryMemory& memory, const SwitchLimits& limits) {
  if (state.ticks_since_switch < std::numeric_limits<int>::max()) ++state.ticks_since_switch;
  state.theta_goal = angle_of(in.goal - in.position);

  SupervisorDecision decision{state.mode, state.mode, SwitchCause::None};

  if (state.mode == Mode::WFM) {
    if (in.wall) {
      state.ticks_without_wall = 0;
      state.last_tangent = oriented_tangent(*in.wall, state.direction);
      state.theta_0 = angle_of(*state.last_tangent);
    } else {
      ++state.ticks_without_wall;
    }
    const bool free_side = !limits.require_free_side || !in.wall ||
                           in.wall->normal.dot(in.goal - in.position) > 0.0;
    if (state.theta_0 && free_side &&
        goal_behind(state.theta_goal, *state.theta_0)) {
      ++state.ticks_goal_behind;
    } else {
      state.ticks_goal_behind = 0;
    }
    decision.cause = should_switch_to_apf(state, in.position, in.goal, memory, limits);
    if (decision.switched()) {
      state.mode = Mode::APF;
      state.theta_0.reset();
      state.last_tangent.reset();
      state.ticks_without_wall = 0;
      state.ticks_goal_behind = 0;
      state.ticks_since_switch = 0;
    }
  } else {
    decision.cause =
        should_switch_to_wfm(state, in.f_total, in.position, in.heading_direction, memory,
                             in.t_now, (in.goal - in.position).norm(), limits);
    if (decision.switched()) {
      state.mode = Mode::WFM;
      state.ticks_since_switch = 0;
      state.ticks_without_wall = 0;
      state.pid.reset();
      if (in.wall) {
        state.direction = state.policy == Policy::Memoryless
                              ? progress_direction(in.position, in.goal, *in.wall)
                              : choose_direction(in.position, memory, in.goal, *in.wall,
                                                 limits.d_th);
        state.last_tangent = oriented_tangent(*in.wall, state.direction);
      } else {
        state.direction = FollowDirection::Left;
        state.last_tangent = in.heading_direction;
      }
      state.theta_0 = angle_of(*state.last_tangent);
    }
  }
  decision.mode = state.mode;
  return decision;
}

}  // namespace mwfapf
