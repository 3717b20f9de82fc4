// Command-line front end: simulate, compare, validate and list scenarios.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mwfapf/output.hpp"
#include "mwfapf/scenario.hpp"

namespace fs = std::filesystem;
using namespace mwfapf;

namespace {

#ifndef MWFAPF_SCENARIO_DIR
#define MWFAPF_SCENARIO_DIR "scenarios"
#endif

enum ExitCode { kOk = 0, kConfigError = 1, kMaxSteps = 2, kCollision = 3 };

std::vector<fs::path> search_dirs() {
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("NAV_SCENARIO_DIR")) {
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ':')) {
      if (!item.empty()) dirs.emplace_back(item);
    }
  }
  dirs.emplace_back(MWFAPF_SCENARIO_DIR);
  return dirs;
}

/// Resolves a file path, a name in the search path, or a builtin name into a
/// scenario document.
nlohmann::json resolve_document(const std::string& arg) {
  if (fs::is_regular_file(arg)) return read_scenario_json(arg);
  for (const fs::path& dir : search_dirs()) {
    for (const fs::path& candidate : {dir / arg, dir / (arg + ".json")}) {
      if (fs::is_regular_file(candidate)) return read_scenario_json(candidate.string());
    }
  }
  if (auto builtin = find_builtin(arg)) return to_json(*builtin);
  throw ScenarioError("scenario not found: " + arg + " (path does not exist)");
}

Scenario resolve_scenario(const std::string& arg, const std::vector<std::string>& overrides,
                          std::optional<std::uint64_t> seed) {
  nlohmann::json doc = resolve_document(arg);
  apply_overrides(doc, overrides);
  if (seed) doc["sim"]["seed"] = *seed;
  return scenario_from_json(doc);
}

int exit_code_for(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::GoalReached: return kOk;
    case OutcomeKind::MaxStepsExceeded: return kMaxSteps;
    case OutcomeKind::Collision: return kCollision;
  }
  return kConfigError;
}

void print_summary(const RunSummary& s) {
  std::cout << "policy=" << s.policy << " outcome=" << to_string(s.outcome)
            << " ticks=" << s.ticks << " path_length=" << format_number(s.path_length)
            << " switches=" << s.switches << " min_clearance=" << format_number(s.min_clearance)
            << '\n';
}

int cmd_simulate(const std::string& scenario_arg, const std::string& policy_name,
                 std::optional<std::uint64_t> seed, const std::string& csv_path,
                 const std::string& svg_path, const std::vector<std::string>& overrides) {
  const auto policy = parse_policy(policy_name);
  if (!policy) {
    std::cerr << "error: unknown policy '" << policy_name << "'\n";
    return kConfigError;
  }
  const Scenario sc = resolve_scenario(scenario_arg, overrides, seed);
  const RunResult result = run(sc.world, sc.params, *policy);
  if (!csv_path.empty()) write_csv(csv_path, result.records);
  if (!svg_path.empty()) render_svg(sc.world, result.records, result.memory, svg_path);
  print_summary(summarize(sc.world, result, policy_name, sc.params.sim.radius));
  return exit_code_for(result.outcome.kind);
}

int cmd_compare(const std::string& scenario_arg, const std::vector<std::string>& policy_names,
                std::optional<std::uint64_t> seed, const std::string& out_dir,
                const std::vector<std::string>& overrides) {
  if (policy_names.size() < 2) {
    std::cerr << "error: compare needs at least two policies\n";
    return kConfigError;
  }
  std::vector<Policy> policies;
  for (const std::string& name : policy_names) {
    const auto p = parse_policy(name);
    if (!p) {
      std::cerr << "error: unknown policy '" << name << "'\n";
      return kConfigError;
    }
    policies.push_back(*p);
  }
  const Scenario sc = resolve_scenario(scenario_arg, overrides, seed);

  std::vector<std::future<RunResult>> jobs;
  for (Policy p : policies) {
    jobs.push_back(
        std::async(std::launch::async, [&sc, p] { return run(sc.world, sc.params, p); }));
  }
  std::vector<RunResult> results;
  for (auto& job : jobs) results.push_back(job.get());

  std::vector<RunSummary> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    rows.push_back(summarize(sc.world, results[i], policy_names[i], sc.params.sim.radius));
  }
  write_comparison_csv(std::cout, rows);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream table(fs::path(out_dir) / "comparison.csv", std::ios::binary);
    write_comparison_csv(table, rows);
    std::vector<SvgPath> paths;
    for (std::size_t i = 0; i < results.size(); ++i) {
      write_csv((fs::path(out_dir) / (policy_names[i] + ".csv")).string(), results[i].records);
      paths.push_back({policy_names[i], &results[i].records, nullptr});
    }
    std::ofstream svg(fs::path(out_dir) / "comparison.svg", std::ios::binary);
    svg << render_svg(sc.world, paths);
  }
  return kOk;
}

int cmd_validate(const std::string& scenario_arg) {
  const nlohmann::json doc = resolve_document(scenario_arg);
  const auto violations = validate_scenario_json(doc);
  for (const Violation& v : violations) {
    std::cout << "invalid: " << v.invariant << ": " << v.detail << '\n';
  }
  if (!violations.empty()) return kConfigError;
  std::cout << "ok\n";
  return kOk;
}

int cmd_list() {
  for (const Scenario& s : builtin_scenarios()) {
    std::cout << s.name << "\t" << s.description << '\n';
  }
  return kOk;
}

int cmd_export(const std::string& dir) {
  fs::create_directories(dir);
  for (const Scenario& s : builtin_scenarios()) {
    std::ofstream out(fs::path(dir) / (s.name + ".json"), std::ios::binary);
    out << to_json(s).dump(2) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MWF-APF reactive navigation simulator"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string policy = "full";
  std::vector<std::string> policies;
  std::optional<std::uint64_t> seed;
  std::string csv_path;
  std::string svg_path;
  std::string out_dir;
  std::vector<std::string> overrides;

  auto* sim = app.add_subcommand("simulate", "Run one policy on a scenario");
  sim->add_option("scenario", scenario_arg, "Scenario file or builtin name")->required();
  sim->add_option("--policy", policy, "full|memoryless|wfm-memory|apf-only");
  sim->add_option("--seed", seed, "Noise seed (overrides sim.seed)");
  sim->add_option("--csv", csv_path, "Trajectory CSV output");
  sim->add_option("--svg", svg_path, "SVG plot output");
  sim->add_option("--set", overrides, "Parameter override key.path=value")->take_all();

  auto* cmp = app.add_subcommand("compare", "Run several policies on the same scenario");
  cmp->add_option("scenario", scenario_arg, "Scenario file or builtin name")->required();
  cmp->add_option("--policies", policies, "Comma-separated policies")->delimiter(',')->required();
  cmp->add_option("--seed", seed, "Noise seed (overrides sim.seed)");
  cmp->add_option("--out", out_dir, "Directory for the table, trajectories and overlay SVG");
  cmp->add_option("--set", overrides, "Parameter override key.path=value")->take_all();

  auto* val = app.add_subcommand("validate", "Check a scenario without running it");
  val->add_option("scenario", scenario_arg, "Scenario file or builtin name")->required();

  auto* list = app.add_subcommand("list-scenarios", "List the bundled scenarios");

  auto* exp = app.add_subcommand("export-scenarios", "Write every bundled scenario as JSON");
  exp->add_option("dir", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*sim) return cmd_simulate(scenario_arg, policy, seed, csv_path, svg_path, overrides);
    if (*cmp) return cmd_compare(scenario_arg, policies, seed, out_dir, overrides);
    if (*val) return cmd_validate(scenario_arg);
    if (*list) return cmd_list();
    if (*exp) return cmd_export(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
