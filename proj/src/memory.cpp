#include "mwfapf/memory.hpp"

namespace mwfapf {

void MemoryThresholds::validate() const {
  if (!(d_th > 0.0)) throw std::invalid_argument("memory: d_th must be positive");
  if (!(theta_th > 0.0 && theta_th <= kPi)) {
    throw std::invalid_argument("memory: theta_th must be in (0, pi]");
  }
  if (!(f_th > 0.0)) throw std::invalid_argument("memory: f_th must be positive");
  if (!(t_refractory >= 0.0)) throw std::invalid_argument("memory: t_refractory must be >= 0");
}

TrajectoryMemory::TrajectoryMemory(MemoryThresholds thresholds) : thresholds_(thresholds) {
  thresholds_.validate();
}

bool TrajectoryMemory::maybe_record(double t, const Point2& p, const Vector2& v,
                                    double f_total_norm, Mode mode,
                                    std::optional<FollowDirection> wfm_direction) {
  if (!frames_.empty() && !(t > frames_.back().t)) {
    throw ContractViolation("maybe_record: time must be strictly increasing");
  }

  bool any_near = false;
  bool all_near_turned = true;
  for (const KeyFrame& f : frames_) {
    if ((p - f.p).norm() > thresholds_.d_th) continue;
    any_near = true;
    if (angle_between(v, f.v) <= thresholds_.theta_th) {
      all_near_turned = false;
      break;
    }
  }
  const bool fresh_place = !any_near;
  const bool fresh_heading = any_near && all_near_turned;
  const bool local_min = f_total_norm <= thresholds_.f_th;

  if (!(fresh_place || fresh_heading || local_min)) return false;

  frames_.push_back(KeyFrame{t, p, v.normalized(), local_min, wfm_direction, mode});
  if (local_min) t_m_ = t;
  return true;
}

std::vector<Segment2> TrajectoryMemory::history_polyline() const {
  std::vector<Segment2> segments;
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if ((frames_[i].p - frames_[i - 1].p).norm() <= kGeomEps) continue;
    segments.emplace_back(frames_[i - 1].p, frames_[i].p);
  }
  return segments;
}

bool TrajectoryMemory::crosses_history(const Point2& from, const Point2& to) const {
  if (frames_.size() < 3 || (to - from).norm() <= kGeomEps) return false;
  const Segment2 query(from, to);
  // The newest segment ends where the robot just was and always touches it.
  std::size_t last = frames_.size() - 1;
  while (last > 0 && (frames_[last].p - frames_[last - 1].p).norm() <= kGeomEps) --last;
  for (std::size_t i = 1; i < last; ++i) {
    if ((frames_[i].p - frames_[i - 1].p).norm() <= kGeomEps) continue;
    if (segments_intersect(query, Segment2(frames_[i - 1].p, frames_[i].p))) return true;
  }
  return false;
}

std::optional<double> TrajectoryMemory::find_revisit(const Point2& p, const Vector2& v,
                                                     double t_now) const {
  if (!t_m_) return std::nullopt;
  for (const KeyFrame& f : frames_) {
    if (!(f.t < *t_m_)) break;
    if (t_now - f.t <= thresholds_.t_refractory) continue;
    if ((p - f.p).norm() <= thresholds_.d_th && angle_between(v, f.v) <= thresholds_.theta_th) {
      return f.t;
    }
  }
  return std::nullopt;
}

const KeyFrame* TrajectoryMemory::latest_tagged_near(const Point2& p, double radius) const {
  for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
    if (it->wfm_direction && (p - it->p).norm() <= radius) return &*it;
  }
  return nullptr;
}

}  // namespace mwfapf
