#include <algorithm>
#include <cmath>
#include <sstream>

#include "skylink/alk.hpp"
#include "skylink/error.hpp"

namespace skylink {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double a) { return std::remainder(a, 2.0 * kPi); }

double cross2(const Vec3& a, const Vec3& b) { return a[0] * b[1] - a[1] * b[0]; }

struct Candidate {
  double tau;
  int ia;
  int ib;
  Vec3 point;
  double angle;
};

// Matched-normal search: along pieces where the conormal angles of a and b
// agree, b - a is parallel to the velocity at a dangerous tangency.
std::vector<Candidate> matched_normal_candidates(const Front& a, const Front& b, const Vec3& v) {
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  const int na = static_cast<int>(sa.size());
  const int nb = static_cast<int>(sb.size());
  auto angle = [](const FrontSample& s) { return std::atan2(s.conormal.components[1], s.conormal.components[0]); };
  std::vector<double> tha(sa.size()), thb(sb.size());
  for (int i = 0; i < na; ++i) tha[static_cast<std::size_t>(i)] = angle(sa[static_cast<std::size_t>(i)]);
  for (int j = 0; j < nb; ++j) thb[static_cast<std::size_t>(j)] = angle(sb[static_cast<std::size_t>(j)]);

  const double vv = v.squaredNorm();
  std::vector<Candidate> out;
  for (int i = 0; i < na; ++i) {
    const int i1 = (i + 1) % na;
    const double a0 = tha[static_cast<std::size_t>(i)];
    const double da = wrap_pi(tha[static_cast<std::size_t>(i1)] - a0);
    if (std::abs(da) < 1e-14) continue;
    const Vec3& pa0 = sa[static_cast<std::size_t>(i)].point.coords;
    const Vec3& pa1 = sa[static_cast<std::size_t>(i1)].point.coords;
    for (int j = 0; j < nb; ++j) {
      const int j1 = (j + 1) % nb;
      double b0 = thb[static_cast<std::size_t>(j)];
      const double db = wrap_pi(thb[static_cast<std::size_t>(j1)] - b0);
      if (std::abs(db) < 1e-14) continue;
      b0 += 2.0 * kPi * std::round((a0 - b0) / (2.0 * kPi));
      const double lo = std::max(std::min(a0, a0 + da), std::min(b0, b0 + db));
      const double hi = std::min(std::max(a0, a0 + da), std::max(b0, b0 + db));
      if (lo > hi) continue;

      const Vec3& pb0 = sb[static_cast<std::size_t>(j)].point.coords;
      const Vec3& pb1 = sb[static_cast<std::size_t>(j1)].point.coords;
      auto gap = [&](double th, double& lam, double& mu) -> Vec3 {
        lam = (th - a0) / da;
        mu = (th - b0) / db;
        return (pb0 + mu * (pb1 - pb0)) - (pa0 + lam * (pa1 - pa0));
      };
      double lam = 0.0, mu = 0.0;
      const double hlo = cross2(v, gap(lo, lam, mu));
      const double hhi = cross2(v, gap(hi, lam, mu));
      if (hlo == hhi) continue;
      if ((hlo > 0.0 && hhi > 0.0) || (hlo < 0.0 && hhi < 0.0)) continue;
      const double th = lo + (hi - lo) * hlo / (hlo - hhi);
      const Vec3 d = gap(th, lam, mu);
      const double tau = d.dot(v) / vv;
      if (!(tau > 0.0)) continue;
      const Vec3 p = pb0 + mu * (pb1 - pb0);
      out.push_back({tau, lam < 0.5 ? i : i1, mu < 0.5 ? j : j1, p, th});
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) { return x.tau < y.tau; });
  return out;
}

}  // namespace

AlkResult alk_by_homotopy(const Front& a, const Front& b, const Vec3& velocity, const CoefficientGroup& group,
                          const NumericPolicy& policy) {
  if (a.model().kind() != SurfaceKind::FlatPlane || b.model().kind() != SurfaceKind::FlatPlane)
    throw Error(ErrorCode::Unsupported, "homotopy scenes live in a single flat chart");
  if (a.slice_time() != b.slice_time()) throw Error(ErrorCode::InvalidArgument, "fronts lie on different slices");
  if (a.size() < 5 || b.size() < 5) throw Error(ErrorCode::InvalidArgument, "fronts need at least 5 samples");
  const Vec3 v(velocity[0], velocity[1], 0.0);
  if (!(v.norm() > 0.0)) throw Error(ErrorCode::InvalidArgument, "homotopy velocity must be nonzero");

  const double spacing = std::max(a.max_spacing(), b.max_spacing());
  const double merge_tau = policy.tol_merge * (1.0 + spacing) / v.norm();
  const auto candidates = matched_normal_candidates(a, b, v);

  AlkResult out;
  long count = 0;
  const Candidate* last = nullptr;
  for (const Candidate& c : candidates) {
    if (last && c.tau - last->tau <= merge_tau) {
      if ((c.point - last->point).norm() <= 4.0 * spacing) continue;
      std::ostringstream msg;
      msg << "two tangencies at homotopy time " << c.tau << "; refine the step";
      throw Error(ErrorCode::StepRefinement, msg.str());
    }
    last = &c;
    if (c.tau <= merge_tau) throw Error(ErrorCode::DegenerateTangency, "fronts are tangent at the start of the homotopy");

    const Vec3 n(std::cos(c.angle), std::sin(c.angle), 0.0);
    const double vn = v.dot(n);
    if (std::abs(vn) <= 1e-12 * v.norm())
      throw Error(ErrorCode::DegenerateTangency, "homotopy moves along the common tangent line");
    const int alpha = vn > 0.0 ? +1 : -1;
    const Tangency tg = make_tangency(a.translated(c.tau * v), c.ia, b, c.ib, SurfacePoint{c.point}, n);
    const int sigma = tangency_sign(tg, tg.epsilon, alpha, policy.tol_hess);
    count -= sigma;
    out.crossings.push_back({c.tau, 0.0, SurfacePoint{c.point}, -sigma, CrossingMethod::TangencyFormula});
  }
  out.value = AlkValue::of(count, group);
  return out;
}

ChartScene chart_scene(const Event& x, const Event& y, int n, double slice) {
  const double ra = slice - x.time;
  const double rb = slice - y.time;
  if (!(ra > 0.0) || !(rb > 0.0)) throw Error(ErrorCode::InvalidArgument, "scene slice must lie after both events");
  if (n < 16) throw Error(ErrorCode::InvalidArgument, "scene fronts need at least 16 samples");
  const SurfaceModel plane = SurfaceModel::flat_plane();
  auto circle = [&](const Vec3& c, double r) {
    std::vector<SurfacePoint> pts;
    std::vector<Vec3> normals;
    for (int i = 0; i < n; ++i) {
      const double s = 2.0 * kPi * i / n;
      const Vec3 u(std::cos(s), std::sin(s), 0.0);
      pts.push_back(SurfacePoint{c + r * u});
      normals.push_back(u);
    }
    return Front::from_curve(plane, slice, pts, normals);
  };
  const Vec3 pa(x.point.x(), x.point.y(), 0.0);
  const Vec3 pb(y.point.x(), y.point.y(), 0.0);
  const Vec3 d = pa - pb;
  const Vec3 v = d.norm() > 1e-12 ? Vec3(d / d.norm()) : Vec3(Vec3::UnitX());
  return {circle(pa, ra), circle(pb, rb), v};
}

AlkResult alk_by_homotopy(const StaticSpacetime& st, const Event& x, const Event& y, const CoefficientGroup& group,
                          int n) {
  const SurfaceModel& m = st.surface();
  const NumericPolicy& policy = st.policy();
  if (m.kind() == SurfaceKind::RoundSphere)
    throw Error(ErrorCode::Unsupported, "the sphere has no chart containing the fronts");
  m.validate(x.point, policy.tol_unit);
  m.validate(y.point, policy.tol_unit);
  const CausalVerdict verdict = causal_relation(st, x, y);
  if (verdict.identical) throw Error(ErrorCode::CommonNullGeodesic, "identical events share every null geodesic");
  if (verdict.kind == CausalKind::Null) throw Error(ErrorCode::CommonNullGeodesic, "events are null related");

  const int samples = n > 0 ? n : policy.n_samples;
  const double slice = std::max(x.time, y.time) + 0.5;
  const Vec3 px(x.point.x(), x.point.y(), 0.0);
  const Vec3 d0 = m.displacement(x.point, y.point);

  std::vector<Vec3> lifts;
  if (m.kind() == SurfaceKind::FlatPlane) {
    lifts.push_back(d0);
  } else {
    // Lifts of y whose circle can meet the circle of x.
    const double reach = (slice - x.time) + (slice - y.time);
    const auto& per = m.periods();
    const int kx = static_cast<int>(std::ceil(reach / per[0])) + policy.lattice_margin;
    const int ky = static_cast<int>(std::ceil(reach / per[1])) + policy.lattice_margin;
    for (int i = -kx; i <= kx; ++i)
      for (int j = -ky; j <= ky; ++j) {
        const Vec3 d = d0 + Vec3(i * per[0], j * per[1], 0.0);
        if (d.norm() < reach) lifts.push_back(d);
      }
  }

  AlkResult out;
  out.target = y.point;
  long count = 0;
  for (const Vec3& d : lifts) {
    const Event xa{SurfacePoint::planar(px[0], px[1]), x.time};
    const Event yb{SurfacePoint::planar(px[0] + d[0], px[1] + d[1]), y.time};
    const ChartScene scene = chart_scene(xa, yb, samples, slice);
    const AlkResult part = alk_by_homotopy(scene.a, scene.b, scene.velocity, CoefficientGroup::integers(), policy);
    count += part.value.count;
    for (SignedCrossing c : part.crossings) {
      c.location = m.normalize(c.location);
      out.crossings.push_back(c);
    }
  }
  out.value = AlkValue::of(count, group);
  return out;
}

}  // namespace skylink
