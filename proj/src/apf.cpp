#include "mwfapf/apf.hpp"

namespace mwfapf {

void ApfParams::validate() const {
  if (!(zeta > 0.0 && rho > 0.0 && eta > 0.0 && d_c > 0.0 && v_max > 0.0 && f_sat > 0.0 &&
        min_distance > 0.0)) {
    throw std::invalid_argument("apf: all gains and distances must be strictly positive");
  }
}

ForceVector attractive_force(const Point2& p, const Point2& goal, const ApfParams& params) {
  const Vector2 diff = p - goal;
  const double dist = diff.norm();
  if (dist == 0.0) return ForceVector::Zero();
  if (dist <= params.rho) return -params.zeta * diff;
  return -params.zeta * params.rho * diff / dist;
}

ForceVector repulsive_force(const Point2& p, const Point2& obstacle, const ApfParams& params) {
  const Vector2 d = p - obstacle;
  const double dist = d.norm();
  if (dist == 0.0) throw SingularityError("repulsive_force: robot at obstacle point");
  if (dist > params.d_c) return ForceVector::Zero();
  double magnitude = params.eta * (1.0 / dist - 1.0 / params.d_c);
  if (params.repulsive_form == RepulsiveForm::Gradient) magnitude /= dist * dist;
  return magnitude * d / dist;
}

ForceVector total_force(const Point2& p, const Point2& goal, std::span<const Point2> obstacles,
                        const ApfParams& params) {
  ForceVector f = attractive_force(p, goal, params);
  for (const Point2& q : obstacles) {
    Vector2 d = p - q;
    const double dist = d.norm();
    if (dist == 0.0) throw SingularityError("total_force: robot at obstacle point");
    if (dist < params.min_distance) d *= params.min_distance / dist;
    f += repulsive_force(p, p - d, params);
  }
  return f;
}

Vector2 apf_velocity(const ForceVector& f, const ApfParams& params) {
  const double mag = f.norm();
  if (mag == 0.0) return Vector2::Zero();
  if (mag >= params.f_sat) return params.v_max * f / mag;
  return params.v_max * f / params.f_sat;
}

}  // namespace mwfapf
