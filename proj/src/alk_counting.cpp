#include <cmath>
#include <sstream>

#include "preimages.hpp"
#include "skylink/alk.hpp"
#include "skylink/error.hpp"

namespace skylink {

namespace {

[[noreturn]] void throw_null(const CausalVerdict& v) {
  std::ostringstream msg;
  msg << "events are null related; " << v.connections.size() << " common null geodesic(s):";
  for (const auto& c : v.connections) {
    const Vec3& u = c.direction.components;
    msg << " [length " << c.length;
    if (c.whole_family)
      msg << ", every direction";
    else
      msg << ", direction (" << u[0] << ", " << u[1] << ", " << u[2] << ")";
    msg << "]";
  }
  throw Error(ErrorCode::CommonNullGeodesic, msg.str());
}

// Clearance of v from the front at time tau.
double front_clearance(const SurfaceModel& m, const SurfacePoint& p, const SurfacePoint& v, double tau, int margin) {
  double best = tau;
  for (const auto& c : m.geodesic_connections(p, v, 2.0 * tau + 1.0, margin))
    best = std::min(best, std::abs(c.length - tau));
  return best;
}

// Auxiliary target near a critical value of the cone, off the front at tau.
SurfacePoint perturb_target(const SurfaceModel& m, const SurfacePoint& p, const SurfacePoint& v, double tau,
                            const NumericPolicy& policy) {
  const auto f = m.frame(v);
  for (double delta = policy.perturb_delta; delta >= 1e-7; delta *= 0.1) {
    if (front_clearance(m, p, v, tau, policy.lattice_margin) <= 2.0 * delta) continue;
    for (int k = 0; k < 8; ++k) {
      const double a = k * 0.7853981633974483;
      const TangentVector dir{v, std::cos(a) * f[0] + std::sin(a) * f[1]};
      const SurfacePoint u = m.integrate_geodesic(v, dir, delta, delta).first;
      if (front_clearance(m, p, u, tau, policy.lattice_margin) > 0.5 * delta) return u;
    }
  }
  throw Error(ErrorCode::AmbiguousPreimage, "no auxiliary target clears the front near a critical value");
}

}  // namespace

AlkResult alk_by_counting(const StaticSpacetime& st, const Event& x, const Event& y, const CoefficientGroup& group,
                          int n_rays) {
  const SurfaceModel& m = st.surface();
  const NumericPolicy& policy = st.policy();
  m.validate(x.point, policy.tol_unit);
  m.validate(y.point, policy.tol_unit);

  const CausalVerdict verdict = causal_relation(st, x, y);
  if (verdict.identical) throw Error(ErrorCode::CommonNullGeodesic, "identical events share every null geodesic");
  if (verdict.kind == CausalKind::Null) throw_null(verdict);

  AlkResult out;
  Event from = x;
  Event to = y;
  if (y.time < x.time) {
    // m = 2: alk(x, y) = (-1)^m alk(y, x) = alk(y, x)
    std::swap(from, to);
    out.swapped = true;
  }
  const double tau = to.time - from.time;
  out.target = to.point;
  if (tau == 0.0) {
    out.value = AlkValue::of(0, group);
    return out;
  }

  for (const SurfacePoint& c : m.focal_points(from.point)) {
    if (m.distance(c, out.target) < policy.tol_merge) {
      out.target = perturb_target(m, from.point, out.target, tau, policy);
      out.perturbed = true;
      break;
    }
  }

  const auto roots = detail::solve_preimages(m, from.point, tau, detail::fixed_target(out.target), policy, n_rays);
  const LocalChart chart = m.local_chart(out.target);
  const int flip = policy.flip_counting_sign ? -1 : +1;
  long count = 0;
  for (const auto& r : roots) {
    const Vec2 ds = chart.components(r.state.d_ds);
    const Vec2 dt = chart.components(r.state.velocity);
    const double det = ds[0] * dt[1] - ds[1] * dt[0];
    if (!(std::abs(det) >= policy.tol_frame * ds.norm() * dt.norm()) || ds.norm() == 0.0) {
      std::ostringstream msg;
      msg << "critical preimage at s=" << r.s << ", t=" << r.t << " (det=" << det << ")";
      throw Error(ErrorCode::AmbiguousPreimage, msg.str());
    }
    // Orientation reversing preimages count positively: alk = n- - n+.
    const int sign = flip * (det > 0.0 ? -1 : +1);
    count += sign;
    out.crossings.push_back({r.t, r.s, r.state.point, sign, CrossingMethod::PreimageJacobian});
  }
  out.value = AlkValue::of(count, group);
  return out;
}

}  // namespace skylink
