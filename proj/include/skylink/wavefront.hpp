#pragma once

#include <optional>
#include <vector>

#include "skylink/spacetime.hpp"

namespace skylink {

struct FrontSample {
  double s = 0.0;  // circle parameter in [0, 2pi)
  SurfacePoint point;
  TangentVector tangent;   // d/ds of the front, by central differences
  TangentVector conormal;  // unit; the metric dual of the lift codirection
};

// A discretized (lifted) wave front on one slice.
class Front {
 public:
  Front(SurfaceModel model, Event source, double slice_time, std::vector<FrontSample> samples);

  // Front from explicit points and unit conormals at s_i = 2pi i / N, with
  // tangents by central differences. Used for chart scenes.
  static Front from_curve(SurfaceModel model, double slice_time, const std::vector<SurfacePoint>& points,
                          const std::vector<Vec3>& conormals);

  const SurfaceModel& model() const { return model_; }
  const Event& source() const { return source_; }
  double slice_time() const { return slice_time_; }
  const std::vector<FrontSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  double max_spacing() const;
  double min_spacing() const;
  // All sample points coincide (cone vertex).
  bool degenerate(double tol = 1e-14) const;
  // Max over samples of |gbar(conormal, tangent)| / |tangent|.
  double legendrian_defect() const;

  // Flat models only: rigid translation in chart coordinates.
  Front translated(const Vec3& shift) const;

 private:
  SurfaceModel model_;
  Event source_;
  double slice_time_ = 0.0;
  std::vector<FrontSample> samples_;
};

struct FiberFront {
  SurfacePoint center;
  std::vector<TangentVector> directions;
};

Front propagate_front(const StaticSpacetime& st, const Event& x, double t, int n);
FiberFront fiber_front(const SurfaceModel& model, const SurfacePoint& v, int n);

// Max pairwise distance among the front's sample points.
double front_spread(const Front& front);
// Centroid when the spread is below tol (default policy tol_refocus).
std::optional<SurfacePoint> refocus_detect(const Front& front, double tol = 1e-3);

// x2 = c0 + c1 x1 + c2 x1^2 in the tangency chart.
struct QuadraticFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double second_derivative() const { return 2.0 * c2; }
};

// Least-squares quadratic through chart points (x1, x2).
QuadraticFit fit_quadratic(const std::vector<Vec2>& pts);

// A dangerous tangency of two cooriented fronts: coincident points with
// positively aligned conormals. The fits live in the positively oriented
// chart centred at the tangency whose second axis is minus the common conormal.
struct Tangency {
  int index_a = 0;
  int index_b = 0;
  SurfacePoint point;
  int alignment = +1;
  Vec3 conormal = Vec3::Zero();  // common unit conormal (model tangent vector)
  std::array<Vec3, 2> axes;      // chart axes (x1, x2) as model tangent vectors
  QuadraticFit f1;               // branch of front A
  QuadraticFit f2;               // branch of front B
  int epsilon = +1;              // +1 if both branches induce the same orientation on the x1 axis

  // Scalar Hessian of g = f2 - f1 at the tangency point.
  double hessian() const { return f2.second_derivative() - f1.second_derivative(); }
};

std::vector<Tangency> front_tangency_scan(const Front& a, const Front& b, const NumericPolicy& policy = {});

// Builds the tangency record for branch a[ia] / b[ib] at point p with common
// conormal n (5-sample least-squares fits per branch).
Tangency make_tangency(const Front& a, int ia, const Front& b, int ib, const SurfacePoint& p, const Vec3& n);

}  // namespace skylink
