#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "mwfapf/geometry.hpp"
#include "mwfapf/types.hpp"

namespace mwfapf {

struct MemoryThresholds {
  double d_th = 0.3;            ///< spatial key-frame spacing (m)
  double theta_th = kPi / 4.0;  ///< heading change that justifies a new frame at a visited spot
  double f_th = 0.05;           ///< force magnitude at or below which a local minimum is flagged
  double t_refractory = 2.0;    ///< frames younger than this never count as revisits (s)

  void validate() const;
};

struct KeyFrame {
  double t = 0.0;
  Point2 p = Point2::Zero();
  Vector2 v = Vector2::UnitX();  ///< unit moving direction
  bool is_local_min = false;
  std::optional<FollowDirection> wfm_direction;
  Mode mode = Mode::APF;
};

/// Raised when a frame is offered out of time order.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Append-only store of trajectory key frames with the history queries used
/// for arbitration. Queries are linear scans.
class TrajectoryMemory {
 public:
  explicit TrajectoryMemory(MemoryThresholds thresholds = {});

  /// Appends a frame when it is far from every stored frame, or near frames
  /// only with a clearly different heading, or when the force magnitude marks
  /// a local minimum. Returns whether a frame was stored.
  bool maybe_record(double t, const Point2& p, const Vector2& v, double f_total_norm, Mode mode,
                    std::optional<FollowDirection> wfm_direction);

  /// True when the segment from -> to touches the stored polyline, ignoring
  /// its newest segment.
  bool crosses_history(const Point2& from, const Point2& to) const;

  /// Earliest stored time whose position and heading match (p, v), that
  /// precedes the last local minimum and is older than the refractory window.
  std::optional<double> find_revisit(const Point2& p, const Vector2& v, double t_now) const;

  /// Segments between consecutive stored positions, zero-length ones skipped.
  std::vector<Segment2> history_polyline() const;

  /// Newest frame within radius of p that carries a wall-following tag.
  const KeyFrame* latest_tagged_near(const Point2& p, double radius) const;

  const std::vector<KeyFrame>& frames() const { return frames_; }
  std::optional<double> t_m() const { return t_m_; }
  const MemoryThresholds& thresholds() const { return thresholds_; }
  std::size_t size() const { return frames_.size(); }

 private:
  MemoryThresholds thresholds_;
  std::vector<KeyFrame> frames_;
  std::optional<double> t_m_;
};

}  // namespace mwfapf
