#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mwfapf/sim.hpp"

namespace mwfapf {

/// Parse or validation failure; the message names the file, line or
/// violated invariant.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PathRatioBound {
  Policy relative_to = Policy::WfmMemoryOnly;
  double max_ratio = 1.0;
};

struct PolicyExpectation {
  OutcomeKind outcome = OutcomeKind::GoalReached;
  std::optional<bool> cycle;                ///< endless-loop detector verdict
  std::optional<PathRatioBound> path_ratio; ///< path length vs another policy's run
};

struct Scenario {
  std::string name;
  std::string description;
  World world;
  Params params;
  std::map<Policy, PolicyExpectation> expected;
};

nlohmann::json to_json(const Scenario& s);

/// Strict: every parameter must be present. Throws ScenarioError.
Scenario scenario_from_json(const nlohmann::json& j);

/// Applies dotted-key overrides such as "apf.zeta=2" to a scenario document.
/// Values parse as JSON when possible and as strings otherwise; keys must
/// already exist.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

/// Reads a file and reports syntax errors with their line number.
nlohmann::json read_scenario_json(const std::string& path);

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides = {});

/// Parses and checks everything without running; one entry per violation.
std::vector<Violation> validate_scenario_json(const nlohmann::json& j);

/// Every environment reproduced by this project, with expected outcomes.
std::vector<Scenario> builtin_scenarios();

std::optional<Scenario> find_builtin(const std::string& name);

/// True when the last quarter of the run keeps returning to an earlier
/// (position, heading) state at least three times with near-constant period.
bool detect_cycle(const std::vector<StepRecord>& records, double d_th, double theta_th);

}  // namespace mwfapf
