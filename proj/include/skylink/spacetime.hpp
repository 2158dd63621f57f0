#pragma once

#include <optional>
#include <vector>

#include "skylink/numeric_policy.hpp"
#include "skylink/surface.hpp"

namespace skylink {

struct Event {
  SurfacePoint point;
  double time = 0.0;
};

// (M x R, g = gbar - dt^2) with a complete model surface M.
class StaticSpacetime {
 public:
  explicit StaticSpacetime(SurfaceModel surface, NumericPolicy policy = {})
      : surface_(std::move(surface)), policy_(policy) {}

  const SurfaceModel& surface() const { return surface_; }
  const NumericPolicy& policy() const { return policy_; }
  StaticSpacetime with_policy(const NumericPolicy& policy) const { return StaticSpacetime(surface_, policy); }

  // (a, b) are flat chart coordinates or (lat, lon) on the sphere.
  Event event(double a, double b, double time) const { return {surface_.point(a, b), time}; }
  static Event translate(const Event& e, double dt) { return {e.point, e.time + dt}; }

  // Timelike sectional curvatures are nonnegative for the flat products;
  // the round sphere has negative ones (see timelike_sectional_curvature).
  bool timelike_curvature_certified_nonnegative() const { return surface_.is_flat(); }

 private:
  SurfaceModel surface_;
  NumericPolicy policy_;
};

enum class CausalKind { Unrelated, Chronological, Null };
enum class TimeDirection { FutureOf, PastOf };  // direction of y relative to x

struct CausalVerdict {
  CausalKind kind = CausalKind::Unrelated;
  TimeDirection direction = TimeDirection::FutureOf;
  bool identical = false;
  double spatial_distance = 0.0;
  double time_gap = 0.0;  // t_y - t_x
  // Connections of length |dt| (within tol_null) when kind == Null.
  std::vector<GeodesicConnection> connections;

  bool related() const { return kind != CausalKind::Unrelated; }
};

const char* to_string(CausalKind kind);

// Ground-truth causal relation for the static products. Common null geodesics
// take precedence over chronological relation.
CausalVerdict causal_relation(const StaticSpacetime& st, const Event& x, const Event& y);

// 0 unless y in J+(x); then sqrt(dt^2 - d^2).
double lorentz_distance(const StaticSpacetime& st, const Event& x, const Event& y);

// Future null geodesic from x with initial spatial direction u(s), advanced by
// coordinate time t >= 0.
Event null_cone_exp(const StaticSpacetime& st, const Event& x, double s, double t);

// 2-plane at an event, spanned by two vectors in chart components
// (c1, c2, t); the sphere chart is (lat, lon).
struct TimelikePlane {
  Event base;
  Vec3 first;
  Vec3 second;
};

// Spacetime metric and Christoffel symbols of the product in chart (c1, c2, t).
Mat3 spacetime_metric(const StaticSpacetime& st, const Vec3& chart);
std::array<Mat3, 3> spacetime_christoffel(const StaticSpacetime& st, const Vec3& chart);

// K(E) = g(R(w,v)v, w) / (g(v,v) g(w,w) - g(v,w)^2), curvature tensor by
// central differences of the spacetime Christoffels (step policy.fd_step).
// Throws NullPlane for a degenerate plane.
double sectional_curvature(const StaticSpacetime& st, const TimelikePlane& plane);
// As above, additionally throws NotTimelike for spacelike planes.
double timelike_sectional_curvature(const StaticSpacetime& st, const TimelikePlane& plane);

// Events sampled on a common parameter grid in [0, 1]; linear interpolation
// (min-image on the torus, normalized chord on the sphere) between samples.
struct EventPath {
  std::vector<double> params;
  std::vector<Event> samples;

  Event at(const SurfaceModel& model, double tau) const;
};

// Smallest tau where the paths' events become null related: grid hits, or a
// sign change of f(tau) = d(p1, p2) - |dt| refined by bisection.
std::optional<double> null_moment_detector(const StaticSpacetime& st, const EventPath& path1,
                                           const EventPath& path2);
// Exhaustive grid mode: every grid hit and every sign change.
std::vector<double> null_moments_all(const StaticSpacetime& st, const EventPath& path1,
                                     const EventPath& path2);

}  // namespace skylink
