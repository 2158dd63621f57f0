#pragma once

#include <functional>
#include <vector>

#include "skylink/numeric_policy.hpp"
#include "skylink/surface.hpp"

namespace skylink::detail {

// Target of the preimage search as a function of the cone time t.
struct Target {
  std::function<SurfacePoint(double)> point;
  std::function<Vec3(double)> velocity;  // spatial velocity, zero for a fixed point
};

struct Preimage {
  double s = 0.0;
  double t = 0.0;
  RayState state;
  Vec3 target_velocity = Vec3::Zero();
};

// All (s, t), t in (0, tau), with exp_p(t u(s)) = target(t). Per ray minima
// of the distance on a t-grid seed a Newton iteration in (s, t). Sorted by
// (s, t). Throws AmbiguousPreimage for roots inside the tolerance band at
// either end of the interval.
std::vector<Preimage> solve_preimages(const SurfaceModel& m, const SurfacePoint& p, double tau, const Target& target,
                                      const NumericPolicy& policy, int n_rays);

Target fixed_target(const SurfacePoint& v);

}  // namespace skylink::detail
