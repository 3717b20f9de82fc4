#pragma once

#include <span>
#include <stdexcept>

#include "mwfapf/geometry.hpp"

namespace mwfapf {

using ForceVector = Vector2;

enum class RepulsiveForm {
  Gradient,  ///< exact negative gradient of the repulsive potential
  Printed,   ///< eta (1/|d| - 1/d_c) along d, without the 1/|d|^2 factor
};

struct ApfParams {
  double zeta = 1.0;          ///< attractive gain
  double rho = 3.0;           ///< quadratic/conic switch distance of the attractive field
  double eta = 1.0;           ///< repulsive gain
  double d_c = 1.5;           ///< repulsive cutoff distance
  double v_max = 0.5;         ///< commanded speed cap (m/s)
  double f_sat = 3.0;         ///< force magnitude at which speed saturates; zeta * rho by default
  double min_distance = 0.01; ///< obstacle distances are clamped up to this before use
  RepulsiveForm repulsive_form = RepulsiveForm::Gradient;

  void validate() const;
};

/// Thrown when a repulsive force is requested at the obstacle point itself.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Scalar>
Scalar attractive_potential(const Vec2<Scalar>& p, const Vec2<Scalar>& goal,
                            const ApfParams& params) {
  using std::sqrt;
  const Scalar dist = sqrt((p - goal).squaredNorm());
  if (dist <= params.rho) return Scalar(0.5 * params.zeta) * dist * dist;
  return Scalar(params.zeta * params.rho) * dist;
}

/// Repulsive potential of one obstacle point; zero beyond d_c.
template <typename Scalar>
Scalar repulsive_potential(const Vec2<Scalar>& p, const Vec2<Scalar>& obstacle,
                           const ApfParams& params) {
  using std::sqrt;
  const Scalar dist = sqrt((p - obstacle).squaredNorm());
  if (dist > params.d_c) return Scalar(0.0);
  const Scalar gap = Scalar(1.0) / dist - Scalar(1.0 / params.d_c);
  return Scalar(0.5 * params.eta) * gap * gap;
}

ForceVector attractive_force(const Point2& p, const Point2& goal, const ApfParams& params);

/// Pushes away from the obstacle point (along p - obstacle). Zero beyond d_c.
/// Throws SingularityError when p coincides with the obstacle point.
ForceVector repulsive_force(const Point2& p, const Point2& obstacle, const ApfParams& params);

/// Attraction plus the repulsion of every obstacle point, each clamped to at
/// least params.min_distance from p.
ForceVector total_force(const Point2& p, const Point2& goal, std::span<const Point2> obstacles,
                        const ApfParams& params);

/// Maps a force to a velocity command: full speed at or above f_sat, linear
/// below it.
Vector2 apf_velocity(const ForceVector& f, const ApfParams& params);

}  // namespace mwfapf
