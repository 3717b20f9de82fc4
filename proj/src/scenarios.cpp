#include <cmath>

#include "mwfapf/scenario.hpp"

namespace mwfapf {

namespace {

Polygon rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// U-shaped wall of thickness t, closed on the +x side, open toward -x.
Polygon pocket(double x0, double y0, double x1, double y1, double t) {
  return {{x0, y0},     {x1, y0},         {x1, y1},         {x0, y1},
          {x0, y1 - t}, {x1 - t, y1 - t}, {x1 - t, y0 + t}, {x0, y0 + t}};
}

Params base_params() {
  Params p;
  p.sensors = SensorConfig::default8(4.0);
  p.apf.f_sat = p.apf.zeta * p.apf.rho;
  return p;
}

Scenario make(std::string name, std::string description, std::vector<Polygon> obstacles,
              Bounds bounds, Point2 start, Point2 goal,
              std::map<Policy, PolicyExpectation> expected, Params params = base_params()) {
  return Scenario{std::move(name), std::move(description),
                  World(std::move(obstacles), bounds, start, goal), params, std::move(expected)};
}

PolicyExpectation reach() { return {OutcomeKind::GoalReached, std::nullopt, std::nullopt}; }

PolicyExpectation loop_forever() { return {OutcomeKind::MaxStepsExceeded, true, std::nullopt}; }

PolicyExpectation trapped() { return {OutcomeKind::MaxStepsExceeded, std::nullopt, std::nullopt}; }

}  // namespace

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;

  const Polygon cup = pocket(5.0, 2.5, 7.5, 6.5, 0.5);
  out.push_back(make("local-min-wall",
                     "Flat wall square to the start-goal line; the repulsive and attractive "
                     "forces cancel in front of it. Approximate transcription.",
                     {rect(5.5, 2.0, 6.0, 7.0)}, {{0.0, 0.0}, {12.0, 9.0}}, {1.5, 4.5}, {10.5, 4.5},
                     {{Policy::ApfOnly, trapped()}, {Policy::Full, reach()}}));

  // Concave pocket: memoryless switching leaves it and descends back into it.
  out.push_back(make("endless-loop",
                     "Concave pocket where memoryless switching keeps re-entering the same "
                     "local minimum. Approximate transcription.",
                     {cup}, {{0.0, 0.0}, {12.0, 9.0}}, {1.5, 4.5}, {10.5, 4.5},
                     {{Policy::Memoryless, loop_forever()}, {Policy::Full, reach()}}));

  // Thick-walled room whose only exit is in the wall facing away from the goal.
  const Polygon room = {{3.0, 3.8}, {3.0, 7.2}, {8.2, 7.2}, {8.2, 2.0}, {3.0, 2.0}, {3.0, 2.6},
                        {3.2, 2.6}, {3.2, 2.2}, {8.0, 2.2}, {8.0, 7.0}, {3.2, 7.0}, {3.2, 3.8}};
  out.push_back(make("closed-room-small-exit",
                     "Closed room whose only exit faces away from the goal. Approximate "
                     "transcription.",
                     {room}, {{0.0, 0.0}, {12.0, 9.2}}, {5.0, 5.2}, {10.5, 5.2},
                     {{Policy::Memoryless, loop_forever()}, {Policy::Full, reach()}}));

  // Two long blocks leave a straight corridor; a short baffle sits in it.
  out.push_back(make("open-corridor",
                     "Straight corridor with a small baffle; a simple detour suffices. "
                     "Approximate transcription.",
                     {rect(3.0, 0.0, 9.0, 2.5), rect(3.0, 6.5, 9.0, 9.0), rect(6.0, 4.6, 6.5, 6.5)},
                     {{0.0, 0.0}, {12.0, 9.0}}, {1.0, 4.0}, {11.0, 4.5},
                     {{Policy::Full, reach()}, {Policy::ApfOnly, reach()}}));

  // H lying on its side: two posts joined by a crossbar, start in the upper
  // bay, goal in the lower bay.
  const Polygon h_shape = {{4.0, 1.5}, {4.5, 1.5}, {4.5, 4.25}, {7.5, 4.25}, {7.5, 1.5},
                           {8.0, 1.5}, {8.0, 7.5}, {7.5, 7.5}, {7.5, 4.75}, {4.5, 4.75},
                           {4.5, 7.5}, {4.0, 7.5}};
  out.push_back(make("h-shape",
                     "H-shaped obstacle; the robot must leave the upper bay and make a u-turn "
                     "into the lower one. Approximate transcription.",
                     {h_shape}, {{0.0, 0.0}, {12.0, 9.0}}, {6.0, 6.5}, {6.0, 2.5},
                     {{Policy::Full, reach()}}));

  // The start lies inside a narrow pocket. The first wall-following choice
  // leads out over the top, after which plain descent runs straight back in.
  out.push_back(make("repetitive-path",
                     "Narrow pocket around the start; the first escape attempt fails and "
                     "descent heads back to the same dead end. Approximate transcription.",
                     {pocket(2.7, 3.0, 6.4, 5.3, 0.5)}, {{0.0, 0.0}, {12.0, 9.0}}, {3.7, 4.2},
                     {8.6, 2.4},
                     {{Policy::Full, {OutcomeKind::GoalReached, std::nullopt,
                                      PathRatioBound{Policy::WfmMemoryOnly, 0.9}}},
                      {Policy::WfmMemoryOnly, reach()}}));

  out.push_back(make("comparison-arena",
                     "Mixed arena with a pocket and three bars, used to compare the switching "
                     "policies side by side.",
                     {pocket(6.0, 3.0, 8.5, 6.5, 0.5), rect(3.0, 1.0, 3.5, 3.5),
                      rect(3.0, 6.0, 3.5, 8.0), rect(10.0, 2.0, 10.5, 5.0)},
                     {{0.0, 0.0}, {13.0, 9.0}}, {1.2, 4.2}, {11.8, 4.8},
                     {{Policy::Memoryless, trapped()}, {Policy::Full, reach()}}));
  return out;
}

std::optional<Scenario> find_builtin(const std::string& name) {
  for (Scenario& s : builtin_scenarios()) {
    if (s.name == name) return std::move(s);
  }
  return std::nullopt;
}

namespace {

// Counts separate passes through the (position, heading) state of record r and
// checks that the last three periods agree to within 10%.
bool cycles_through(const std::vector<StepRecord>& records, std::size_t r, double d_th,
                    double theta_th) {
  const StepRecord& ref = records[r];
  if (ref.velocity.norm() <= 1e-9) return false;

  std::vector<std::size_t> visits;
  bool away = true;
  for (std::size_t k = 0; k <= r; ++k) {
    const StepRecord& rec = records[k];
    if ((rec.position - ref.position).norm() > d_th) {
      away = true;
      continue;
    }
    if (!away || rec.velocity.norm() <= 1e-9) continue;
    if (angle_between(rec.velocity, ref.velocity) <= theta_th) {
      visits.push_back(k);
      away = false;
    }
  }
  if (visits.size() < 4) return false;

  const std::size_t m = visits.size();
  const double periods[3] = {static_cast<double>(visits[m - 3] - visits[m - 4]),
                             static_cast<double>(visits[m - 2] - visits[m - 3]),
                             static_cast<double>(visits[m - 1] - visits[m - 2])};
  const double mean = (periods[0] + periods[1] + periods[2]) / 3.0;
  double var = 0.0;
  for (double p : periods) var += (p - mean) * (p - mean) / 3.0;
  return mean > 0.0 && std::sqrt(var) / mean < 0.1;
}

}  // namespace

bool detect_cycle(const std::vector<StepRecord>& records, double d_th, double theta_th) {
  const std::size_t n = records.size();
  if (n < 2000) return false;
  const std::size_t tail = n - n / 4;
  const std::size_t stride = std::max<std::size_t>(1, (n - tail) / 64);

  for (std::size_t r = n - 1;; r -= stride) {
    if (cycles_through(records, r, d_th, theta_th)) return true;
    if (r < tail + stride) break;
  }
  return false;
}

}  // namespace mwfapf
