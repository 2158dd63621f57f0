#include "skylink/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "skylink/error.hpp"

namespace skylink {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t wrap_index(long i, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// Central-difference tangent at sample i, projected to the tangent plane.
Vec3 central_tangent(const SurfaceModel& m, const std::vector<SurfacePoint>& pts, std::size_t i) {
  const std::size_t n = pts.size();
  const double ds = kTwoPi / static_cast<double>(n);
  Vec3 d = m.displacement(pts[wrap_index(static_cast<long>(i) - 1, n)], pts[wrap_index(static_cast<long>(i) + 1, n)]);
  if (m.kind() == SurfaceKind::RoundSphere) {
    const Vec3& p = pts[i].coords;
    d -= d.dot(p) * p;
  }
  return d / (2.0 * ds);
}

}  // namespace

Front::Front(SurfaceModel model, Event source, double slice_time, std::vector<FrontSample> samples)
    : model_(std::move(model)), source_(source), slice_time_(slice_time), samples_(std::move(samples)) {
  for (std::size_t i = 1; i < samples_.size(); ++i)
    if (!(samples_[i].s > samples_[i - 1].s))
      throw Error(ErrorCode::InvalidArgument, "front samples must be ordered by strictly increasing s");
}

Front Front::from_curve(SurfaceModel model, double slice_time, const std::vector<SurfacePoint>& points,
                        const std::vector<Vec3>& conormals) {
  if (points.size() != conormals.size() || points.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "front curve needs matching points and conormals (N >= 3)");
  const std::size_t n = points.size();
  std::vector<FrontSample> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    samples[i].s = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    samples[i].point = points[i];
    samples[i].tangent = {points[i], central_tangent(model, points, i)};
    samples[i].conormal = {points[i], conormals[i].normalized()};
  }
  Event source{points.front(), slice_time};
  return Front(std::move(model), source, slice_time, std::move(samples));
}

double Front::max_spacing() const {
  double best = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i)
    best = std::max(best, model_.distance(samples_[i].point, samples_[(i + 1) % samples_.size()].point));
  return best;
}

double Front::min_spacing() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples_.size(); ++i)
    best = std::min(best, model_.distance(samples_[i].point, samples_[(i + 1) % samples_.size()].point));
  return best;
}

bool Front::degenerate(double tol) const { return max_spacing() <= tol; }

double Front::legendrian_defect() const {
  double worst = 0.0;
  for (const auto& smp : samples_) {
    const double len = model_.norm(smp.tangent);
    if (len == 0.0) continue;
    worst = std::max(worst, std::abs(model_.inner(smp.conormal, smp.tangent)) / len);
  }
  return worst;
}

Front Front::translated(const Vec3& shift) const {
  if (!model_.is_flat()) throw Error(ErrorCode::Unsupported, "translation is defined for flat models only");
  std::vector<FrontSample> moved = samples_;
  for (auto& smp : moved) {
    smp.point = model_.normalize({smp.point.coords + shift});
    smp.tangent.base = smp.point;
    smp.conormal.base = smp.point;
  }
  Event src{model_.normalize({source_.point.coords + shift}), source_.time};
  return Front(model_, src, slice_time_, std::move(moved));
}

Front propagate_front(const StaticSpacetime& st, const Event& x, double t, int n) {
  if (n < 16) throw Error(ErrorCode::InvalidArgument, "front needs at least 16 samples");
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "front time must be nonnegative");
  const SurfaceModel& m = st.surface();
  m.validate(x.point);
  const std::size_t count = static_cast<std::size_t>(n);
  std::vector<SurfacePoint> points(count);
  std::vector<Vec3> conormals(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = kTwoPi * static_cast<double>(i) / static_cast<double>(count);
    const auto [end, velocity] = m.integrate_geodesic(x.point, m.direction(x.point, s), t, st.policy());
    points[i] = end;
    conormals[i] = velocity.components;
  }
  std::vector<FrontSample> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    samples[i].s = kTwoPi * static_cast<double>(i) / static_cast<double>(count);
    samples[i].point = points[i];
    samples[i].tangent = {points[i], central_tangent(m, points, i)};
    samples[i].conormal = {points[i], conormals[i].normalized()};
  }
  return Front(m, x, x.time + t, std::move(samples));
}

FiberFront fiber_front(const SurfaceModel& model, const SurfacePoint& v, int n) {
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "fiber front needs at least 4 samples");
  model.validate(v);
  FiberFront f{v, {}};
  f.directions.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) f.directions.push_back(model.direction(v, kTwoPi * i / n));
  return f;
}

double front_spread(const Front& front) {
  const auto& smp = front.samples();
  double worst = 0.0;
  for (std::size_t i = 0; i < smp.size(); ++i)
    for (std::size_t j = i + 1; j < smp.size(); ++j)
      worst = std::max(worst, front.model().distance(smp[i].point, smp[j].point));
  return worst;
}

std::optional<SurfacePoint> refocus_detect(const Front& front, double tol) {
  if (front.size() == 0 || front_spread(front) >= tol) return std::nullopt;
  const SurfaceModel& m = front.model();
  const auto& smp = front.samples();
  if (m.kind() == SurfaceKind::RoundSphere) {
    Vec3 sum = Vec3::Zero();
    for (const auto& s : smp) sum += s.point.coords;
    return SurfacePoint::embedded(sum.normalized());
  }
  Vec3 offset = Vec3::Zero();
  for (const auto& s : smp) offset += m.displacement(smp.front().point, s.point);
  return m.normalize({smp.front().point.coords + offset / static_cast<double>(smp.size())});
}

QuadraticFit fit_quadratic(const std::vector<Vec2>& pts) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(pts.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = 1.0;
    a(r, 1) = pts[i][0];
    a(r, 2) = pts[i][0] * pts[i][0];
    b[r] = pts[i][1];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  return {c[0], c[1], c[2]};
}

Tangency make_tangency(const Front& a, int ia, const Front& b, int ib, const SurfacePoint& p, const Vec3& n) {
  const SurfaceModel& m = a.model();
  const LocalChart chart = m.local_chart(p);
  const Vec2 nc = chart.components(n).normalized();
  const Vec2 e2 = -nc;
  const Vec2 e1(e2[1], -e2[0]);

  auto branch = [&](const Front& f, int center, QuadraticFit& fit) {
    std::vector<Vec2> pts;
    for (int k = -2; k <= 2; ++k) {
      const auto& smp = f.samples()[wrap_index(center + k, f.size())];
      const Vec2 c = chart.coords(smp.point);
      pts.emplace_back(c.dot(e1), c.dot(e2));
    }
    fit = fit_quadratic(pts);
    const Vec2 tangent = chart.components(f.samples()[static_cast<std::size_t>(center)].tangent.components);
    return tangent.dot(e1) >= 0.0 ? +1 : -1;
  };

  Tangency tg;
  tg.index_a = ia;
  tg.index_b = ib;
  tg.point = p;
  tg.alignment = +1;
  tg.conormal = n.normalized();
  const auto& fr = chart.frame();
  tg.axes = {e1[0] * fr[0] + e1[1] * fr[1], e2[0] * fr[0] + e2[1] * fr[1]};
  const int oa = branch(a, ia, tg.f1);
  const int ob = branch(b, ib, tg.f2);
  tg.epsilon = oa * ob;
  return tg;
}

namespace {

struct Candidate {
  int i;
  int j;
  double dist;
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

int cyclic_gap(int a, int b, int n) {
  const int d = std::abs(a - b) % n;
  return std::min(d, n - d);
}

// Quadratic interpolation of a front branch around sample c, sigma in sample units.
struct LocalBranch {
  Vec2 p0, p1, p2;  // chart coords at c-1, c, c+1
  Vec2 n0, n1, n2;  // conormal components

  Vec2 point(double sg) const {
    return p1 + 0.5 * sg * (p2 - p0) + 0.5 * sg * sg * (p2 - 2.0 * p1 + p0);
  }
  Vec2 normal(double sg) const {
    return (n1 + 0.5 * sg * (n2 - n0) + 0.5 * sg * sg * (n2 - 2.0 * n1 + n0)).normalized();
  }
};

LocalBranch local_branch(const Front& f, int c, const LocalChart& chart) {
  const auto& smp = f.samples();
  const auto at = [&](int k) -> const FrontSample& { return smp[wrap_index(c + k, f.size())]; };
  return {chart.coords(at(-1).point), chart.coords(at(0).point), chart.coords(at(1).point),
          chart.components(at(-1).conormal.components), chart.components(at(0).conormal.components),
          chart.components(at(1).conormal.components)};
}

}  // namespace

std::vector<Tangency> front_tangency_scan(const Front& a, const Front& b, const NumericPolicy& policy) {
  if (std::abs(a.slice_time() - b.slice_time()) > 1e-12 * (1.0 + std::abs(a.slice_time())))
    throw Error(ErrorCode::InvalidArgument, "fronts lie on different slices");
  if (!(a.model() == b.model())) throw Error(ErrorCode::InvalidArgument, "fronts live on different models");
  std::vector<Tangency> out;
  if (a.size() < 5 || b.size() < 5 || a.degenerate() || b.degenerate()) return out;

  const SurfaceModel& m = a.model();
  const double tol_hit = policy.tol_hit > 0.0 ? policy.tol_hit : 2.0 * std::max(a.max_spacing(), b.max_spacing());

  std::vector<Candidate> cands;
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i)
    for (std::size_t j = 0; j < sb.size(); ++j) {
      const double d = m.distance(sa[i].point, sb[j].point);
      if (d < tol_hit && m.inner(sa[i].conormal, sb[j].conormal) > 0.0)
        cands.push_back({static_cast<int>(i), static_cast<int>(j), d});
    }
  if (cands.empty()) return out;

  // Cluster candidates adjacent in both indices.
  std::vector<int> parent(cands.size());
  std::iota(parent.begin(), parent.end(), 0);
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  for (std::size_t u = 0; u < cands.size(); ++u)
    for (std::size_t v = u + 1; v < cands.size(); ++v)
      if (cyclic_gap(cands[u].i, cands[v].i, na) <= 2 && cyclic_gap(cands[u].j, cands[v].j, nb) <= 2)
        parent[static_cast<std::size_t>(find_root(parent, static_cast<int>(u)))] = find_root(parent, static_cast<int>(v));
  std::vector<int> best(cands.size(), -1);
  for (std::size_t u = 0; u < cands.size(); ++u) {
    const auto r = static_cast<std::size_t>(find_root(parent, static_cast<int>(u)));
    if (best[r] < 0 || cands[u].dist < cands[static_cast<std::size_t>(best[r])].dist) best[r] = static_cast<int>(u);
  }

  for (std::size_t r = 0; r < cands.size(); ++r) {
    if (best[r] < 0) continue;
    const Candidate& c = cands[static_cast<std::size_t>(best[r])];
    // Root polish on the interpolated branches.
    const LocalChart chart = m.local_chart(sa[static_cast<std::size_t>(c.i)].point);
    const LocalBranch ba = local_branch(a, c.i, chart);
    const LocalBranch bb = local_branch(b, c.j, chart);
    double best_d = std::numeric_limits<double>::infinity(), ua = 0.0, ub = 0.0;
    constexpr int kSub = 64;
    for (int x = -kSub; x <= kSub; ++x)
      for (int y = -kSub; y <= kSub; ++y) {
        const double sx = static_cast<double>(x) / kSub, sy = static_cast<double>(y) / kSub;
        const double d = (ba.point(sx) - bb.point(sy)).norm();
        if (d < best_d) {
          best_d = d;
          ua = sx;
          ub = sy;
        }
      }
    if (best_d > 0.05 * tol_hit) continue;  // close but not touching
    const Vec2 na2 = ba.normal(ua), nb2 = bb.normal(ub);
    const double angle = std::atan2(std::abs(na2[0] * nb2[1] - na2[1] * nb2[0]), na2.dot(nb2));
    if (angle > policy.tol_align) continue;  // transverse crossing
    const Vec2 mid = 0.5 * (ba.point(ua) + bb.point(ub));
    const SurfacePoint p = chart.point(mid);
    const Vec2 n2 = (na2 + nb2).normalized();
    Vec3 n = n2[0] * chart.frame()[0] + n2[1] * chart.frame()[1];
    if (!m.is_flat()) n -= n.dot(p.coords) * p.coords;  // into T_pM
    const Vec3 n_at_p = n.normalized();
    out.push_back(make_tangency(a, c.i, b, c.j, p, n_at_p));
  }
  std::sort(out.begin(), out.end(), [](const Tangency& x, const Tangency& y) {
    return x.index_a != y.index_a ? x.index_a < y.index_a : x.index_b < y.index_b;
  });
  return out;
}

}  // namespace skylink
