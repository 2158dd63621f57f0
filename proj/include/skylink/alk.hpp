#pragma once

#include <vector>

#include "skylink/coefficient_group.hpp"
#include "skylink/spacetime.hpp"
#include "skylink/wavefront.hpp"

namespace skylink {

enum class CrossingMethod { FrameDeterminant, TangencyFormula, PreimageJacobian };

const char* to_string(CrossingMethod method);

struct SignedCrossing {
  double parameter = 0.0;  // cone time t, curve time, or homotopy time
  double ray = 0.0;        // circle parameter s of the null geodesic (0 for tangencies)
  SurfacePoint location;
  int sign = +1;
  CrossingMethod method = CrossingMethod::PreimageJacobian;
};

struct AlkResult {
  AlkValue value;
  std::vector<SignedCrossing> crossings;  // deterministic order
  bool swapped = false;    // roles of x and y exchanged (y in the past of x)
  bool perturbed = false;  // target moved off a focal point
  SurfacePoint target;     // point whose preimages were counted
};

// Sign of det[df1 | w | df2] in a positively oriented chart (x, y, theta) of
// the unit cotangent bundle. Throws DegenerateResolution when nearly singular.
int crossing_sign_frame(const Vec3& df1, const Vec3& w, const Vec3& df2, double tol_frame = 1e-9);

// alpha * epsilon * sign(g''(0)). Throws DegenerateTangency when |g''| <= tol_hess.
int tangency_sign(const Tangency& tangency, int epsilon, int alpha, double tol_hess = 1e-8);

// Signed count of preimages of pi(y) under (s, t) -> W_x^t(s), t in (0, dt).
// n_rays == 0 takes policy.n_samples.
AlkResult alk_by_counting(const StaticSpacetime& st, const Event& x, const Event& y,
                          const CoefficientGroup& group = CoefficientGroup::integers(), int n_rays = 0);

// A future directed timelike curve ending at an event, parametrized by
// coordinate time and extended to the past as needed.
class TimelikeCurve {
 public:
  // Constant spatial point.
  static TimelikeCurve vertical(const Event& end);
  // Geodesic spatial motion with constant speed |velocity| < 1 arriving at end.
  static TimelikeCurve tilted(const Event& end, const TangentVector& velocity);
  // Piecewise geodesic through samples with strictly increasing times;
  // vertical before the first sample.
  static TimelikeCurve sampled(std::vector<Event> samples);

  const Event& end() const { return end_; }
  SurfacePoint point_at(const SurfaceModel& m, double time) const;
  // Spatial velocity d(pi_M gamma)/dt at the given time.
  Vec3 velocity_at(const SurfaceModel& m, double time) const;
  // Max spatial speed over the sampled segments.
  double max_speed(const SurfaceModel& m) const;

 private:
  enum class Kind { Vertical, Tilted, Sampled };
  Kind kind_ = Kind::Vertical;
  Event end_;
  Vec3 velocity_ = Vec3::Zero();
  std::vector<Event> samples_;
};

// Signed intersection count of the null cone of x with gamma over the slices
// (t_x, t_y], each crossing signed by det[dF/dt | dF/ds | gamma'].
AlkResult alk_by_intersection(const StaticSpacetime& st, const Event& x, const Event& y, const TimelikeCurve& gamma,
                              const CoefficientGroup& group = CoefficientGroup::integers(), int n_rays = 0);

// Front a is translated by tau * velocity, tau >= 0, until it lies in a half
// plane disjoint from b; alk = -sum of tangency signs met on the way.
// Flat plane fronts only.
AlkResult alk_by_homotopy(const Front& a, const Front& b, const Vec3& velocity,
                          const CoefficientGroup& group = CoefficientGroup::integers(), const NumericPolicy& policy = {});

// Two events rendered as circle fronts on a common later slice, a = W_x.
struct ChartScene {
  Front a;
  Front b;
  Vec3 velocity;  // default separating direction: from p_y towards p_x
};
ChartScene chart_scene(const Event& x, const Event& y, int n, double slice);

// Event pair through chart scenes: one scene on the plane, a sum over the
// lifts of y to the universal cover on the torus. Unsupported on the sphere.
AlkResult alk_by_homotopy(const StaticSpacetime& st, const Event& x, const Event& y,
                          const CoefficientGroup& group = CoefficientGroup::integers(), int n = 0);

enum class CausalityCall { Related, Unrelated, Inconclusive };
const char* to_string(CausalityCall call);

struct CausalityVerdict {
  CausalityCall call = CausalityCall::Inconclusive;
  AlkValue alk;
  CausalKind oracle = CausalKind::Unrelated;
  bool disagreement = false;  // the call contradicts the ground truth oracle
};

CausalityVerdict causality_from_alk(const StaticSpacetime& st, const ManifoldDescriptor& desc, const Event& x,
                                    const Event& y);

// |alk(x, z) - alk(x, y)|; z must lie in the chronological future of y.
long sighting_count(const StaticSpacetime& st, const Event& x, const Event& y, const Event& z);

// Descriptor of the model's Cauchy surface.
ManifoldDescriptor descriptor_of(const SurfaceModel& model);

}  // namespace skylink
