#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mwfapf/sim.hpp"

namespace mwfapf {

/// Column order of the trajectory CSV.
inline constexpr const char* kCsvHeader =
    "tick,t,x,y,vx,vy,mode,fx,fy,min_reading,keyframe,event";

/// Locale-independent fixed-point rendering with six decimals.
std::string format_number(double v);

void write_csv(std::ostream& os, const std::vector<StepRecord>& records);
void write_csv(const std::string& path, const std::vector<StepRecord>& records);

struct RunSummary {
  std::string policy;
  OutcomeKind outcome;
  int ticks;
  double path_length;
  int switches;
  double wall_follow_fraction;
  double min_clearance;
};

RunSummary summarize(const World& world, const RunResult& run, std::string policy,
                     double radius);

void write_comparison_csv(std::ostream& os, const std::vector<RunSummary>& rows);

/// A labelled trajectory to draw.
struct SvgPath {
  std::string label;
  const std::vector<StepRecord>* records;
  const TrajectoryMemory* memory;  ///< optional; draws key frames when set
};

/// Obstacles filled, bounds outlined, start/goal marked, each path drawn solid
/// in APF and dashed in WFM, key frames as dots and local minima as crosses.
std::string render_svg(const World& world, const std::vector<SvgPath>& paths);

void render_svg(const World& world, const std::vector<StepRecord>& records,
                const TrajectoryMemory& memory, const std::string& out_path);

}  // namespace mwfapf
