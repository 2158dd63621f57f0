#include "skylink/spacetime.hpp"

#include <algorithm>
#include <cmath>

#include "skylink/error.hpp"

namespace skylink {

const char* to_string(CausalKind kind) {
  switch (kind) {
    case CausalKind::Unrelated: return "Unrelated";
    case CausalKind::Chronological: return "ChronologicallyRelated";
    case CausalKind::Null: return "NullRelated";
  }
  return "Unknown";
}

CausalVerdict causal_relation(const StaticSpacetime& st, const Event& x, const Event& y) {
  const SurfaceModel& m = st.surface();
  CausalVerdict v;
  v.time_gap = y.time - x.time;
  v.direction = v.time_gap >= 0.0 ? TimeDirection::FutureOf : TimeDirection::PastOf;
  v.spatial_distance = m.distance(x.point, y.point);
  const double gap = std::abs(v.time_gap);

  if (gap == 0.0 && v.spatial_distance == 0.0) {
    v.kind = CausalKind::Chronological;
    v.identical = true;
    return v;
  }

  const double tol = st.policy().tol_null(v.time_gap);
  if (gap > 0.0) {
    for (auto& c : m.geodesic_connections(x.point, y.point, gap + tol, st.policy().lattice_margin))
      if (std::abs(c.length - gap) < tol) v.connections.push_back(std::move(c));
  }
  if (!v.connections.empty())
    v.kind = CausalKind::Null;
  else if (v.spatial_distance < gap)
    v.kind = CausalKind::Chronological;
  else
    v.kind = CausalKind::Unrelated;
  return v;
}

double lorentz_distance(const StaticSpacetime& st, const Event& x, const Event& y) {
  const double dt = y.time - x.time;
  if (dt <= 0.0) return 0.0;
  const double d = st.surface().distance(x.point, y.point);
  if (d >= dt) return 0.0;
  return std::sqrt(dt * dt - d * d);
}

Event null_cone_exp(const StaticSpacetime& st, const Event& x, double s, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "null cone parameter t must be nonnegative");
  const SurfaceModel& m = st.surface();
  const auto [end, velocity] = m.integrate_geodesic(x.point, m.direction(x.point, s), t, st.policy());
  return {end, x.time + t};
}

Mat3 spacetime_metric(const StaticSpacetime& st, const Vec3& chart) {
  Mat3 g = Mat3::Zero();
  g.topLeftCorner<2, 2>() = st.surface().metric_chart(chart.head<2>());
  g(2, 2) = -1.0;
  return g;
}

std::array<Mat3, 3> spacetime_christoffel(const StaticSpacetime& st, const Vec3& chart) {
  std::array<Mat3, 3> gamma{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  const Christoffel spatial = st.surface().christoffel_chart(chart.head<2>());
  for (int i = 0; i < 2; ++i) gamma[i].topLeftCorner<2, 2>() = spatial[i];
  return gamma;
}

namespace {

Vec3 chart_of(const StaticSpacetime& st, const Event& e) {
  const Vec2 c = st.surface().to_chart(e.point);
  return Vec3(c[0], c[1], e.time);
}

double gram_determinant(const Mat3& g, const Vec3& v, const Vec3& w, double& scale) {
  const double vv = v.dot(g * v), ww = w.dot(g * w), vw = v.dot(g * w);
  scale = v.squaredNorm() * w.squaredNorm();
  return vv * ww - vw * vw;
}

}  // namespace

double sectional_curvature(const StaticSpacetime& st, const TimelikePlane& plane) {
  st.surface().validate(plane.base.point);
  const Vec3 c = chart_of(st, plane.base);
  const Mat3 g = spacetime_metric(st, c);
  double scale = 0.0;
  const double denom = gram_determinant(g, plane.first, plane.second, scale);
  if (!(scale > 0.0) || std::abs(denom) < 1e-10 * scale)
    throw Error(ErrorCode::NullPlane, "plane is degenerate for the spacetime metric");

  const double h = st.policy().fd_step;
  const auto gamma = spacetime_christoffel(st, c);
  // dgamma[l][a](b, c) = ∂_l Γ^a_{bc}
  std::array<std::array<Mat3, 3>, 3> dgamma;
  for (int l = 0; l < 3; ++l) {
    Vec3 e = Vec3::Zero();
    e[l] = h;
    const auto plus = spacetime_christoffel(st, c + e);
    const auto minus = spacetime_christoffel(st, c - e);
    for (int a = 0; a < 3; ++a) dgamma[l][a] = (plus[a] - minus[a]) / (2.0 * h);
  }
  // R^a_{bcd} = ∂_c Γ^a_{db} - ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} - Γ^a_{de} Γ^e_{cb}
  auto riemann = [&](int a, int b, int cc, int d) {
    double r = dgamma[cc][a](d, b) - dgamma[d][a](cc, b);
    for (int e = 0; e < 3; ++e) r += gamma[a](cc, e) * gamma[e](d, b) - gamma[a](d, e) * gamma[e](cc, b);
    return r;
  };
  const Vec3& v = plane.first;
  const Vec3& w = plane.second;
  // R(w, v)v, then lowered against w.
  Vec3 rv = Vec3::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int cc = 0; cc < 3; ++cc)
        for (int d = 0; d < 3; ++d) rv[a] += riemann(a, b, cc, d) * v[b] * w[cc] * v[d];
  return rv.dot(g * w) / denom;
}

double timelike_sectional_curvature(const StaticSpacetime& st, const TimelikePlane& plane) {
  const Vec3 c = chart_of(st, plane.base);
  double scale = 0.0;
  const double det = gram_determinant(spacetime_metric(st, c), plane.first, plane.second, scale);
  if (!(scale > 0.0) || std::abs(det) < 1e-10 * scale)
    throw Error(ErrorCode::NullPlane, "plane is degenerate for the spacetime metric");
  if (det > 0.0) throw Error(ErrorCode::NotTimelike, "plane is spacelike");
  return sectional_curvature(st, plane);
}

Event EventPath::at(const SurfaceModel& model, double tau) const {
  if (samples.empty() || samples.size() != params.size())
    throw Error(ErrorCode::InvalidArgument, "event path has mismatched samples and parameters");
  if (samples.size() == 1 || tau <= params.front()) return samples.front();
  if (tau >= params.back()) return samples.back();
  const auto it = std::upper_bound(params.begin(), params.end(), tau);
  const std::size_t i = static_cast<std::size_t>(it - params.begin()) - 1;
  const double span = params[i + 1] - params[i];
  const double f = span > 0.0 ? (tau - params[i]) / span : 0.0;
  const Event& a = samples[i];
  const Event& b = samples[i + 1];
  SurfacePoint p;
  if (model.kind() == SurfaceKind::RoundSphere)
    p = SurfacePoint::embedded(((1.0 - f) * a.point.coords + f * b.point.coords).normalized());
  else
    p = model.normalize({a.point.coords + f * model.displacement(a.point, b.point)});
  return {p, (1.0 - f) * a.time + f * b.time};
}

namespace {

void check_paths(const EventPath& path1, const EventPath& path2) {
  if (path1.samples.size() < 2 || path2.samples.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "null moment detection needs at least two samples per path");
  if (path1.params != path2.params || path1.params.size() != path1.samples.size() ||
      path2.params.size() != path2.samples.size())
    throw Error(ErrorCode::InvalidArgument, "paths must share one parameter grid");
}

double separation(const StaticSpacetime& st, const Event& a, const Event& b) {
  return st.surface().distance(a.point, b.point) - std::abs(b.time - a.time);
}

double bisect(const StaticSpacetime& st, const EventPath& path1, const EventPath& path2, double lo, double hi) {
  const SurfaceModel& m = st.surface();
  auto f = [&](double tau) { return separation(st, path1.at(m, tau), path2.at(m, tau)); };
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > st.policy().tol_root; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class Sink>
void scan(const StaticSpacetime& st, const EventPath& path1, const EventPath& path2, Sink&& sink) {
  check_paths(path1, path2);
  const std::size_t n = path1.samples.size();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = separation(st, path1.samples[i], path2.samples[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (causal_relation(st, path1.samples[i], path2.samples[i]).kind == CausalKind::Null) {
      if (!sink(path1.params[i])) return;
      continue;
    }
    if (i + 1 < n && f[i] != 0.0 && f[i + 1] != 0.0 && (f[i] > 0.0) != (f[i + 1] > 0.0)) {
      if (!sink(bisect(st, path1, path2, path1.params[i], path1.params[i + 1]))) return;
    }
  }
}

}  // namespace

std::optional<double> null_moment_detector(const StaticSpacetime& st, const EventPath& path1,
                                           const EventPath& path2) {
  std::optional<double> found;
  scan(st, path1, path2, [&](double tau) {
    found = tau;
    return false;
  });
  return found;
}

std::vector<double> null_moments_all(const StaticSpacetime& st, const EventPath& path1, const EventPath& path2) {
  std::vector<double> out;
  scan(st, path1, path2, [&](double tau) {
    out.push_back(tau);
    return true;
  });
  return out;
}

}  // namespace skylink
