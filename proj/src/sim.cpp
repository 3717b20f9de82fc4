#include "mwfapf/sim.hpp"

#include <algorithm>
#include <limits>

namespace mwfapf {

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::GoalReached: return "goal_reached";
    case OutcomeKind::MaxStepsExceeded: return "max_steps_exceeded";
    case OutcomeKind::Collision: return "collision";
  }
  return "max_steps_exceeded";
}

void SimParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("sim: dt must be positive");
  if (max_steps <= 0) throw std::invalid_argument("sim: max_steps must be positive");
  if (!(goal_tol > 0.0)) throw std::invalid_argument("sim: goal_tol must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("sim: radius must be positive");
}

void Params::validate() const {
  sensors.validate();
  apf.validate();
  wfm.validate();
  memory.validate();
  supervisor.validate();
  sim.validate();
  if (apf.d_c > sensors.max_range) {
    throw std::invalid_argument("apf: d_c must not exceed the sensor max_range");
  }
}

bool disc_collides(const World& world, const Point2& center, double radius) {
  return world.point_in_obstacle(center) || world.nearest_edge_distance(center) <= radius;
}

double clearance(const World& world, const std::vector<StepRecord>& records, double radius) {
  if (records.empty()) throw std::invalid_argument("clearance: no records");
  double best = std::numeric_limits<double>::infinity();
  for (const StepRecord& r : records) {
    double d = world.nearest_edge_distance(r.position);
    if (world.point_in_obstacle(r.position)) d = -d;
    best = std::min(best, d - radius);
  }
  return best;
}

namespace {

constexpr double kMaxTangentReversal = -0.5;

struct Perception {
  SensorScan scan;
  ForceVector force;
  std::optional<WallEstimate> wall;
  double min_reading;
};

// Only nearby hits define the wall. While following, only rays on the followed
// side of the current tangent count, so the far side of a passage never takes
// over.
Perception perceive(const World& world, const Params& params, const Point2& p, double heading,
                    RandomStream& rng, const SupervisorState& sup) {
  Perception out;
  out.scan = scan(world, p, heading, params.sensors, rng);
  const auto points = obstacle_points(out.scan, p, heading, params.sensors);
  out.force = total_force(p, world.goal(), points, params.apf);
  const bool following = sup.mode == Mode::WFM && sup.last_tangent.has_value();
  const SensorScan wall_scan = following_view(
      out.scan, heading, params.sensors, params.wfm.follow_range,
      following ? std::optional(std::make_pair(*sup.last_tangent, sup.direction)) : std::nullopt);
  out.wall = estimate_surface(wall_scan, p, heading, params.sensors);
  // The followed tangent turns gradually, even around a thin wall end; a
  // near-reversal means a different surface took over.
  if (following && out.wall &&
      oriented_tangent(*out.wall, sup.direction).dot(*sup.last_tangent) < kMaxTangentReversal) {
    out.wall.reset();
  }
  out.min_reading = *std::min_element(out.scan.readings.begin(), out.scan.readings.end());
  return out;
}

}  // namespace

RunResult run(const World& world, const Params& params, Policy policy) {
  params.validate();
  const SimParams& sp = params.sim;
  if (disc_collides(world, world.start(), sp.radius)) {
    throw std::invalid_argument("start pose overlaps an obstacle or the bounds");
  }

  const SwitchLimits limits =
      make_limits(params.supervisor, params.wfm, params.memory, sp.goal_tol, sp.dt);
  RunResult result{{}, {}, TrajectoryMemory(params.memory), 0};
  RandomStream rng(sp.seed);

  SupervisorState sup;
  sup.policy = policy;

  RobotState robot;
  robot.position = world.start();
  robot.radius = sp.radius;
  const Vector2 to_goal = world.goal() - world.start();
  robot.heading = to_goal.norm() > 0.0 ? angle_of(to_goal) : 0.0;

  auto terminate = [&](int tick, OutcomeKind kind) {
    const Perception seen = perceive(world, params, robot.position, robot.heading, rng, sup);
    StepRecord rec;
    rec.tick = tick;
    rec.t = robot.clock;
    rec.position = robot.position;
    rec.mode = sup.mode;
    rec.force = seen.force;
    rec.min_reading = seen.min_reading;
    rec.event = std::string(to_string(kind));
    result.records.push_back(std::move(rec));
    result.outcome.kind = kind;
    result.outcome.final_tick = tick;
  };

  for (int tick = 0;; ++tick) {
    robot.clock = tick * sp.dt;
    if ((robot.position - world.goal()).norm() <= sp.goal_tol) {
      terminate(tick, OutcomeKind::GoalReached);
      break;
    }
    if (disc_collides(world, robot.position, robot.radius)) {
      terminate(tick, OutcomeKind::Collision);
      break;
    }
    if (tick == sp.max_steps) {
      terminate(tick, OutcomeKind::MaxStepsExceeded);
      break;
    }

    const Perception seen = perceive(world, params, robot.position, robot.heading, rng, sup);
    const Vector2 heading_dir = unit_from_angle(robot.heading);

    const SupervisorInputs inputs{robot.position, world.goal(), heading_dir, seen.force,
                                  seen.wall, robot.clock};
    const SupervisorDecision decision = step_supervisor(sup, inputs, result.memory, limits);

    Vector2 v;
    if (decision.mode == Mode::APF) {
      v = apf_velocity(seen.force, params.apf);
    } else if (seen.wall) {
      v = wfm_velocity(*seen.wall, sup.direction, params.wfm, sup.pid, sp.dt);
    } else {
      v = params.wfm.v_tangent_mag * *sup.last_tangent;
    }
    const double speed = v.norm();
    if (speed > params.apf.v_max) v *= params.apf.v_max / speed;
    robot.velocity = v;

    const Vector2 moving = v.norm() > 0.0 ? Vector2(v.normalized()) : heading_dir;
    const std::optional<FollowDirection> tag =
        decision.mode == Mode::WFM ? std::optional(sup.direction) : std::nullopt;
    const bool recorded = result.memory.maybe_record(robot.clock, robot.position, moving,
                                                     seen.force.norm(), decision.mode, tag);

    StepRecord rec;
    rec.tick = tick;
    rec.t = robot.clock;
    rec.position = robot.position;
    rec.velocity = v;
    rec.mode = decision.mode;
    rec.force = seen.force;
    rec.min_reading = seen.min_reading;
    rec.keyframe = recorded;
    if (decision.switched()) {
      ++result.switches;
      rec.event = std::string(to_string(decision.from)) + ">" +
                  std::string(to_string(decision.mode)) + ":" +
                  std::string(to_string(decision.cause));
    }
    result.records.push_back(std::move(rec));

    robot.position += v * sp.dt;
    result.outcome.path_length += v.norm() * sp.dt;
    if (v.norm() > 0.01) robot.heading = angle_of(v);
  }
  return result;
}

}  // namespace mwfapf
