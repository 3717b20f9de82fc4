#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mwfapf/scenario.hpp"

namespace mwfapf {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ScenarioError("missing key '" + where + (where.empty() ? "" : ".") + key + "'");
  }
  return j.at(key);
}

double num(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) throw ScenarioError("'" + where + "." + key + "' must be a number");
  return v.get<double>();
}

bool boolean(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_boolean()) throw ScenarioError("'" + where + "." + key + "' must be true or false");
  return v.get<bool>();
}

Point2 point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ScenarioError("'" + where + "' must be an [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_json(const Point2& p) { return json::array({p.x(), p.y()}); }

bool same_angles(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  }
  return true;
}

OutcomeKind parse_outcome(const std::string& s) {
  for (OutcomeKind k :
       {OutcomeKind::GoalReached, OutcomeKind::MaxStepsExceeded, OutcomeKind::Collision}) {
    if (to_string(k) == s) return k;
  }
  throw ScenarioError("unknown outcome '" + s + "'");
}

Policy policy_or_throw(const std::string& s) {
  if (auto p = parse_policy(s)) return *p;
  throw ScenarioError("unknown policy '" + s + "'");
}

struct WorldParts {
  std::vector<Polygon> obstacles;
  Bounds bounds;
  Point2 start;
  Point2 goal;
};

WorldParts parse_world_parts(const json& w) {
  WorldParts out;
  const json& b = require(w, "bounds", "world");
  out.bounds.min = point(require(b, "min", "world.bounds"), "world.bounds.min");
  out.bounds.max = point(require(b, "max", "world.bounds"), "world.bounds.max");
  out.start = point(require(w, "start", "world"), "world.start");
  out.goal = point(require(w, "goal", "world"), "world.goal");
  const json& obs = require(w, "obstacles", "world");
  if (!obs.is_array()) throw ScenarioError("'world.obstacles' must be an array");
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const std::string where = "world.obstacles[" + std::to_string(k) + "]";
    if (!obs[k].is_array()) throw ScenarioError("'" + where + "' must be a vertex list");
    Polygon poly;
    for (const json& v : obs[k]) poly.push_back(point(v, where));
    out.obstacles.push_back(std::move(poly));
  }
  return out;
}

Params parse_params(const json& j) {
  Params p;

  const json& s = require(j, "sensors", "");
  if (s.contains("preset")) {
    const std::string preset = s.at("preset").get<std::string>();
    if (preset == "default8") {
      p.sensors = SensorConfig::default8();
    } else if (preset == "uav5") {
      p.sensors = SensorConfig::uav5();
    } else {
      throw ScenarioError("unknown sensor preset '" + preset + "'");
    }
  } else {
    const json& angles = require(s, "angles", "sensors");
    if (!angles.is_array()) throw ScenarioError("'sensors.angles' must be an array");
    p.sensors.mount_angles = angles.get<std::vector<double>>();
  }
  p.sensors.max_range = num(s, "max_range", "sensors");
  p.sensors.noise_sigma = num(s, "noise_sigma", "sensors");

  const json& a = require(j, "apf", "");
  p.apf.zeta = num(a, "zeta", "apf");
  p.apf.rho = num(a, "rho", "apf");
  p.apf.eta = num(a, "eta", "apf");
  p.apf.d_c = num(a, "d_c", "apf");
  p.apf.v_max = num(a, "v_max", "apf");
  p.apf.f_sat = num(a, "f_sat", "apf");
  p.apf.min_distance = num(a, "min_distance", "apf");
  const std::string form = require(a, "repulsive_form", "apf").get<std::string>();
  if (form == "gradient") {
    p.apf.repulsive_form = RepulsiveForm::Gradient;
  } else if (form == "printed") {
    p.apf.repulsive_form = RepulsiveForm::Printed;
  } else {
    throw ScenarioError("apf.repulsive_form must be \"gradient\" or \"printed\"");
  }

  const json& w = require(j, "wfm", "");
  p.wfm.d_wall = num(w, "d_wall", "wfm");
  p.wfm.v_tangent_mag = num(w, "v_tangent", "wfm");
  p.wfm.pid.kp = num(w, "kp", "wfm");
  p.wfm.pid.ki = num(w, "ki", "wfm");
  p.wfm.pid.kd = num(w, "kd", "wfm");
  p.wfm.integral_limit = num(w, "integral_limit", "wfm");
  p.wfm.coast_time = num(w, "coast_time", "wfm");
  p.wfm.follow_range = num(w, "follow_range", "wfm");

  const json& m = require(j, "memory", "");
  p.memory.d_th = num(m, "d_th", "memory");
  p.memory.theta_th = num(m, "theta_th", "memory");
  p.memory.f_th = num(m, "f_th", "memory");
  p.memory.t_refractory = num(m, "t_refractory", "memory");

  const json& sv = require(j, "supervisor", "");
  p.supervisor.hysteresis_time = num(sv, "hysteresis_time", "supervisor");
  p.supervisor.goal_behind_time = num(sv, "goal_behind_time", "supervisor");
  p.supervisor.require_free_side = boolean(sv, "require_free_side", "supervisor");

  const json& sim = require(j, "sim", "");
  p.sim.dt = num(sim, "dt", "sim");
  const json& steps = require(sim, "max_steps", "sim");
  if (!steps.is_number_integer()) throw ScenarioError("'sim.max_steps' must be an integer");
  p.sim.max_steps = steps.get<int>();
  p.sim.goal_tol = num(sim, "goal_tol", "sim");
  p.sim.radius = num(sim, "radius", "sim");
  const json& seed = require(sim, "seed", "sim");
  if (!seed.is_number_unsigned()) throw ScenarioError("'sim.seed' must be a non-negative integer");
  p.sim.seed = seed.get<std::uint64_t>();
  return p;
}

std::map<Policy, PolicyExpectation> parse_expected(const json& j) {
  std::map<Policy, PolicyExpectation> out;
  const json& e = require(j, "expected", "");
  if (!e.is_object()) throw ScenarioError("'expected' must be an object");
  for (const auto& [name, entry] : e.items()) {
    PolicyExpectation pe;
    pe.outcome = parse_outcome(require(entry, "outcome", "expected." + name).get<std::string>());
    if (entry.contains("cycle")) pe.cycle = entry.at("cycle").get<bool>();
    if (entry.contains("path_ratio")) {
      const json& r = entry.at("path_ratio");
      PathRatioBound bound;
      bound.relative_to = policy_or_throw(
          require(r, "relative_to", "expected." + name + ".path_ratio").get<std::string>());
      bound.max_ratio = num(r, "max", "expected." + name + ".path_ratio");
      pe.path_ratio = bound;
    }
    out[policy_or_throw(name)] = pe;
  }
  return out;
}

}  // namespace

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["description"] = s.description;

  json obstacles = json::array();
  for (const Polygon& poly : s.world.obstacles()) {
    json verts = json::array();
    for (const Point2& v : poly) verts.push_back(point_json(v));
    obstacles.push_back(verts);
  }
  j["world"] = {{"bounds",
                 {{"min", point_json(s.world.bounds().min)},
                  {"max", point_json(s.world.bounds().max)}}},
                {"start", point_json(s.world.start())},
                {"goal", point_json(s.world.goal())},
                {"obstacles", obstacles}};

  const Params& p = s.params;
  json sensors;
  if (same_angles(p.sensors.mount_angles, SensorConfig::default8().mount_angles)) {
    sensors["preset"] = "default8";
  } else if (same_angles(p.sensors.mount_angles, SensorConfig::uav5().mount_angles)) {
    sensors["preset"] = "uav5";
  } else {
    sensors["angles"] = p.sensors.mount_angles;
  }
  sensors["max_range"] = p.sensors.max_range;
  sensors["noise_sigma"] = p.sensors.noise_sigma;
  j["sensors"] = sensors;

  j["apf"] = {{"zeta", p.apf.zeta},
              {"rho", p.apf.rho},
              {"eta", p.apf.eta},
              {"d_c", p.apf.d_c},
              {"v_max", p.apf.v_max},
              {"f_sat", p.apf.f_sat},
              {"min_distance", p.apf.min_distance},
              {"repulsive_form",
               p.apf.repulsive_form == RepulsiveForm::Gradient ? "gradient" : "printed"}};
  j["wfm"] = {{"d_wall", p.wfm.d_wall},         {"v_tangent", p.wfm.v_tangent_mag},
              {"kp", p.wfm.pid.kp},             {"ki", p.wfm.pid.ki},
              {"kd", p.wfm.pid.kd},             {"integral_limit", p.wfm.integral_limit},
              {"coast_time", p.wfm.coast_time},   {"follow_range", p.wfm.follow_range}};
  j["memory"] = {{"d_th", p.memory.d_th},
                 {"theta_th", p.memory.theta_th},
                 {"f_th", p.memory.f_th},
                 {"t_refractory", p.memory.t_refractory}};
  j["supervisor"] = {{"hysteresis_time", p.supervisor.hysteresis_time},
                     {"goal_behind_time", p.supervisor.goal_behind_time},
                     {"require_free_side", p.supervisor.require_free_side}};
  j["sim"] = {{"dt", p.sim.dt},
              {"max_steps", p.sim.max_steps},
              {"goal_tol", p.sim.goal_tol},
              {"radius", p.sim.radius},
              {"seed", p.sim.seed}};

  json expected = json::object();
  for (const auto& [policy, pe] : s.expected) {
    json e = {{"outcome", std::string(to_string(pe.outcome))}};
    if (pe.cycle) e["cycle"] = *pe.cycle;
    if (pe.path_ratio) {
      e["path_ratio"] = {{"relative_to", std::string(to_string(pe.path_ratio->relative_to))},
                         {"max", pe.path_ratio->max_ratio}};
    }
    expected[std::string(to_string(policy))] = e;
  }
  j["expected"] = expected;
  return j;
}

Scenario scenario_from_json(const json& j) {
  try {
    const std::string name = require(j, "name", "").get<std::string>();
    const std::string description =
        j.contains("description") ? j.at("description").get<std::string>() : std::string();
    WorldParts parts = parse_world_parts(require(j, "world", ""));
    Params params = parse_params(j);
    try {
      params.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("parameter invariant violated: ") + e.what());
    }
    World world(std::move(parts.obstacles), parts.bounds, parts.start, parts.goal);
    if (disc_collides(world, world.start(), params.sim.radius)) {
      throw ScenarioError("world invariant 'start_clear_of_walls' violated");
    }
    return Scenario{name, description, std::move(world), params, parse_expected(j)};
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
}

std::vector<Violation> validate_scenario_json(const json& j) {
  std::vector<Violation> out;
  try {
    const WorldParts parts = parse_world_parts(require(j, "world", ""));
    out = validate_world(parts.obstacles, parts.bounds, parts.start, parts.goal);
    if (!out.empty()) return out;
    scenario_from_json(j);
  } catch (const ScenarioError& e) {
    out.push_back({"scenario_well_formed", e.what()});
  } catch (const json::exception& e) {
    out.push_back({"scenario_well_formed", e.what()});
  }
  return out;
}

void apply_overrides(json& doc, const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ScenarioError("override '" + item + "' must look like key.path=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);

    json* node = &doc;
    std::stringstream parts(key);
    std::string part;
    while (std::getline(parts, part, '.')) {
      if (!node->is_object() || !node->contains(part)) {
        throw ScenarioError("override key '" + key + "' does not exist");
      }
      node = &(*node)[part];
    }
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    *node = value;
  }
}

json read_scenario_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario file not found: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw ScenarioError(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  json doc = read_scenario_json(path);
  apply_overrides(doc, overrides);
  try {
    return scenario_from_json(doc);
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

}  // namespace mwfapf
