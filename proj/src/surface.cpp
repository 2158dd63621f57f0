#include "skylink/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skylink/error.hpp"

namespace skylink {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_component(double d, double period) { return d - period * std::round(d / period); }

double reduce(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

// Angle between unit vectors, accurate near 0 and pi.
double unit_angle(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

}  // namespace

SurfaceModel SurfaceModel::flat_plane() { return SurfaceModel(SurfaceKind::FlatPlane, {0.0, 0.0}, 0.0); }

SurfaceModel SurfaceModel::flat_torus(double period_x, double period_y) {
  if (!(period_x > 0.0) || !(period_y > 0.0))
    throw Error(ErrorCode::InvalidArgument, "torus periods must be positive");
  return SurfaceModel(SurfaceKind::FlatTorus, {period_x, period_y}, 0.0);
}

SurfaceModel SurfaceModel::round_sphere(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "sphere radius must be positive");
  return SurfaceModel(SurfaceKind::RoundSphere, {0.0, 0.0}, radius);
}

std::string SurfaceModel::name() const {
  switch (kind_) {
    case SurfaceKind::FlatPlane: return "plane";
    case SurfaceKind::FlatTorus: return "torus";
    case SurfaceKind::RoundSphere: return "sphere";
  }
  return "unknown";
}

SurfacePoint SurfaceModel::point(double a, double b) const {
  if (kind_ == SurfaceKind::RoundSphere) return from_chart(Vec2(a, b));
  return normalize(SurfacePoint::planar(a, b));
}

SurfacePoint SurfaceModel::normalize(const SurfacePoint& p) const {
  switch (kind_) {
    case SurfaceKind::FlatPlane: return SurfacePoint::planar(p.x(), p.y());
    case SurfaceKind::FlatTorus:
      return SurfacePoint::planar(reduce(p.x(), periods_[0]), reduce(p.y(), periods_[1]));
    case SurfaceKind::RoundSphere: return SurfacePoint::embedded(p.coords.normalized());
  }
  return p;
}

void SurfaceModel::validate(const SurfacePoint& p, double tol_unit) const {
  if (!p.coords.allFinite()) throw Error(ErrorCode::Domain, "non-finite surface point");
  if (kind_ == SurfaceKind::RoundSphere) {
    if (std::abs(p.coords.norm() - 1.0) > tol_unit)
      throw Error(ErrorCode::Domain, "sphere point is not a unit vector");
  } else if (p.coords[2] != 0.0) {
    throw Error(ErrorCode::Domain, "flat point has a nonzero third coordinate");
  }
}

Vec2 SurfaceModel::to_chart(const SurfacePoint& p) const {
  if (kind_ != SurfaceKind::RoundSphere) return Vec2(p.x(), p.y());
  const Vec3& n = p.coords;
  return Vec2(std::asin(std::clamp(n[2], -1.0, 1.0)), std::atan2(n[1], n[0]));
}

SurfacePoint SurfaceModel::from_chart(const Vec2& c) const {
  if (kind_ != SurfaceKind::RoundSphere) return normalize(SurfacePoint::planar(c[0], c[1]));
  const double lat = c[0], lon = c[1];
  return SurfacePoint::embedded(
      Vec3(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)));
}

Vec2 SurfaceModel::chart_components(const TangentVector& v) const {
  if (kind_ != SurfaceKind::RoundSphere) return Vec2(v.components[0], v.components[1]);
  const Vec2 c = to_chart(v.base);
  const double lat = c[0], lon = c[1];
  const Vec3 d_lat = radius_ * Vec3(-std::sin(lat) * std::cos(lon), -std::sin(lat) * std::sin(lon), std::cos(lat));
  const Vec3 d_lon = radius_ * Vec3(-std::cos(lat) * std::sin(lon), std::cos(lat) * std::cos(lon), 0.0);
  const double lon2 = d_lon.squaredNorm();
  return Vec2(v.components.dot(d_lat) / d_lat.squaredNorm(), lon2 > 0 ? v.components.dot(d_lon) / lon2 : 0.0);
}

Mat2 SurfaceModel::metric_chart(const Vec2& c) const {
  if (kind_ != SurfaceKind::RoundSphere) return Mat2::Identity();
  const double r2 = radius_ * radius_;
  const double cl = std::cos(c[0]);
  Mat2 g;
  g << r2, 0.0, 0.0, r2 * cl * cl;
  return g;
}

Mat2 SurfaceModel::metric_at(const SurfacePoint& p) const {
  validate(p);
  return metric_chart(to_chart(p));
}

Christoffel SurfaceModel::christoffel_chart(const Vec2& c) const {
  Christoffel gamma{Mat2::Zero(), Mat2::Zero()};
  if (kind_ != SurfaceKind::RoundSphere) return gamma;
  // lat/long: Γ^lat_{lon lon} = sin cos, Γ^lon_{lat lon} = -tan
  const double s = std::sin(c[0]), co = std::cos(c[0]);
  gamma[0](1, 1) = s * co;
  gamma[1](0, 1) = gamma[1](1, 0) = -s / co;
  return gamma;
}

Christoffel SurfaceModel::christoffel_at(const SurfacePoint& p) const {
  validate(p);
  return christoffel_chart(to_chart(p));
}

Christoffel SurfaceModel::christoffel_fd(const SurfacePoint& p, double h) const {
  validate(p);
  const Vec2 c = to_chart(p);
  std::array<Mat2, 2> dg;  // dg[l] = ∂_l g
  for (int l = 0; l < 2; ++l) {
    Vec2 e = Vec2::Zero();
    e[l] = h;
    dg[l] = (metric_chart(c + e) - metric_chart(c - e)) / (2.0 * h);
  }
  const Mat2 ginv = metric_chart(c).inverse();
  Christoffel gamma{Mat2::Zero(), Mat2::Zero()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double sum = 0.0;
        for (int l = 0; l < 2; ++l) sum += ginv(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
        gamma[i](j, k) = 0.5 * sum;
      }
  return gamma;
}

double SurfaceModel::inner(const TangentVector& a, const TangentVector& b) const {
  return a.components.dot(b.components);
}

double SurfaceModel::norm(const TangentVector& v) const { return v.components.norm(); }

std::array<Vec3, 2> SurfaceModel::frame(const SurfacePoint& p) const {
  if (kind_ != SurfaceKind::RoundSphere) return {Vec3::UnitX(), Vec3::UnitY()};
  const Vec3& n = p.coords;
  const Vec3 axis = std::abs(n[2]) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 e1 = (axis - axis.dot(n) * n).normalized();
  return {e1, n.cross(e1)};
}

TangentVector SurfaceModel::direction(const SurfacePoint& p, double s) const {
  const auto f = frame(p);
  return {p, std::cos(s) * f[0] + std::sin(s) * f[1]};
}

Vec3 SurfaceModel::wrap(const Vec3& d) const {
  if (kind_ != SurfaceKind::FlatTorus) return d;
  return Vec3(wrap_component(d[0], periods_[0]), wrap_component(d[1], periods_[1]), 0.0);
}

std::pair<SurfacePoint, TangentVector> SurfaceModel::integrate_geodesic(const SurfacePoint& p,
                                                                        const TangentVector& v,
                                                                        double length,
                                                                        double step) const {
  validate(p);
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "geodesic step must be positive");
  if (!(length >= 0.0)) throw Error(ErrorCode::InvalidArgument, "geodesic length must be nonnegative");
  if (std::abs(norm(v) - 1.0) > 1e-10) throw Error(ErrorCode::InvalidArgument, "initial velocity is not unit");

  if (kind_ != SurfaceKind::RoundSphere) {
    const SurfacePoint end = normalize({p.coords + length * v.components});
    return {end, {end, v.components}};
  }
  const double a = length / radius_;
  const Vec3& n = p.coords;
  const Vec3 u = v.components;
  const SurfacePoint end = SurfacePoint::embedded((std::cos(a) * n + std::sin(a) * u).normalized());
  return {end, {end, -std::sin(a) * n + std::cos(a) * u}};
}

std::pair<SurfacePoint, TangentVector> SurfaceModel::integrate_geodesic_rk4(const SurfacePoint& p,
                                                                            const TangentVector& v,
                                                                            double length,
                                                                            double step) const {
  validate(p);
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "geodesic step must be positive");
  if (!(length >= 0.0)) throw Error(ErrorCode::InvalidArgument, "geodesic length must be nonnegative");
  if (std::abs(norm(v) - 1.0) > 1e-10) throw Error(ErrorCode::InvalidArgument, "initial velocity is not unit");

  const bool sphere = kind_ == SurfaceKind::RoundSphere;
  const double r2 = radius_ * radius_;
  // Embedded geodesic equation x'' = -|x'|^2 x / r^2 on the sphere, x'' = 0 when flat.
  auto accel = [&](const Vec3& x, const Vec3& xd) -> Vec3 {
    if (!sphere) return Vec3::Zero();
    return -(xd.squaredNorm() / r2) * x;
  };

  Vec3 x = sphere ? Vec3(radius_ * p.coords) : p.coords;
  Vec3 xd = v.components;
  const int n = std::max(1, static_cast<int>(std::ceil(length / step)));
  const double h = length / n;
  for (int i = 0; i < n; ++i) {
    const Vec3 k1x = xd, k1v = accel(x, xd);
    const Vec3 k2x = xd + 0.5 * h * k1v, k2v = accel(x + 0.5 * h * k1x, k2x);
    const Vec3 k3x = xd + 0.5 * h * k2v, k3v = accel(x + 0.5 * h * k2x, k3x);
    const Vec3 k4x = xd + h * k3v, k4v = accel(x + h * k3x, k4x);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    xd += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  if (!sphere) {
    const SurfacePoint end = normalize({x});
    return {end, {end, xd}};
  }
  const SurfacePoint end = SurfacePoint::embedded(x.normalized());
  const Vec3 tangential = xd - xd.dot(end.coords) * end.coords;
  return {end, {end, tangential}};
}

std::pair<SurfacePoint, TangentVector> SurfaceModel::integrate_geodesic(const SurfacePoint& p,
                                                                        const TangentVector& v,
                                                                        double length,
                                                                        const NumericPolicy& policy) const {
  if (policy.geodesic == GeodesicMethod::RungeKutta4 && kind_ == SurfaceKind::RoundSphere)
    return integrate_geodesic_rk4(p, v, length, policy.rk4_step);
  return integrate_geodesic(p, v, length, policy.rk4_step);
}

RayState SurfaceModel::ray(const SurfacePoint& p, double s, double t) const {
  const auto f = frame(p);
  const Vec3 u = std::cos(s) * f[0] + std::sin(s) * f[1];
  const Vec3 du = -std::sin(s) * f[0] + std::cos(s) * f[1];
  if (kind_ != SurfaceKind::RoundSphere) return {normalize({p.coords + t * u}), u, t * du};
  const double a = t / radius_;
  const Vec3& n = p.coords;
  return {SurfacePoint::embedded((std::cos(a) * n + std::sin(a) * u).normalized()),
          -std::sin(a) * n + std::cos(a) * u, radius_ * std::sin(a) * du};
}

double SurfaceModel::distance(const SurfacePoint& p, const SurfacePoint& q) const {
  if (kind_ == SurfaceKind::RoundSphere) return radius_ * unit_angle(p.coords, q.coords);
  return wrap(q.coords - p.coords).norm();
}

Vec3 SurfaceModel::displacement(const SurfacePoint& p, const SurfacePoint& q) const {
  if (kind_ == SurfaceKind::RoundSphere) return radius_ * (q.coords - p.coords);
  return wrap(q.coords - p.coords);
}

std::vector<GeodesicConnection> SurfaceModel::geodesic_connections(const SurfacePoint& p,
                                                                   const SurfacePoint& q,
                                                                   double max_length,
                                                                   int lattice_margin) const {
  validate(p);
  validate(q);
  std::vector<GeodesicConnection> out;
  if (!(max_length >= 0.0)) return out;

  switch (kind_) {
    case SurfaceKind::FlatPlane: {
      const Vec3 d = q.coords - p.coords;
      const double len = d.norm();
      if (len == 0.0) {
        out.push_back({{p, Vec3::UnitX()}, 0.0, true});
      } else if (len <= max_length) {
        out.push_back({{p, d / len}, len, false});
      }
      break;
    }
    case SurfaceKind::FlatTorus: {
      const double min_period = std::min(periods_[0], periods_[1]);
      const int radius = static_cast<int>(std::ceil(max_length / min_period)) + lattice_margin;
      const Vec3 base = q.coords - p.coords;
      for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b) {
          const Vec3 d = base + Vec3(a * periods_[0], b * periods_[1], 0.0);
          const double len = d.norm();
          if (len > max_length) continue;
          if (len == 0.0)
            out.push_back({{p, Vec3::UnitX()}, 0.0, true});
          else
            out.push_back({{p, d / len}, len, false});
        }
      break;
    }
    case SurfaceKind::RoundSphere: {
      const double circumference = kTwoPi * radius_;
      const double d = distance(p, q);
      const double tol = 1e-12 * radius_;
      if (d <= tol) {
        out.push_back({{p, frame(p)[0]}, 0.0, true});
        for (double len = circumference; len <= max_length; len += circumference)
          out.push_back({{p, frame(p)[0]}, len, true});
      } else if (std::abs(d - kPi * radius_) <= tol) {
        for (double len = d; len <= max_length; len += circumference)
          out.push_back({{p, frame(p)[0]}, len, true});
      } else {
        const Vec3 u = (q.coords - q.coords.dot(p.coords) * p.coords).normalized();
        for (double len = d; len <= max_length; len += circumference) out.push_back({{p, u}, len, false});
        for (double len = circumference - d; len <= max_length; len += circumference)
          out.push_back({{p, -u}, len, false});
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const GeodesicConnection& a, const GeodesicConnection& b) {
    if (a.length != b.length) return a.length < b.length;
    const Vec3& u = a.direction.components;
    const Vec3& v = b.direction.components;
    return std::atan2(u[1], u[0]) < std::atan2(v[1], v[0]);
  });
  return out;
}

std::vector<SurfacePoint> SurfaceModel::focal_points(const SurfacePoint& p) const {
  if (kind_ == SurfaceKind::RoundSphere) return {p, SurfacePoint::embedded(-p.coords)};
  return {p};
}

LocalChart SurfaceModel::local_chart(const SurfacePoint& origin) const { return LocalChart(*this, origin); }

LocalChart::LocalChart(SurfaceModel model, SurfacePoint origin)
    : model_(std::move(model)), origin_(origin), frame_(model_.frame(origin)) {}

Vec2 LocalChart::coords(const SurfacePoint& q) const {
  if (model_.kind() != SurfaceKind::RoundSphere) {
    const Vec3 d = model_.displacement(origin_, q);
    return Vec2(d[0], d[1]);
  }
  const Vec3& o = origin_.coords;
  const Vec3 tangential = q.coords - q.coords.dot(o) * o;
  const double sn = tangential.norm();
  if (sn == 0.0) return Vec2::Zero();
  const double angle = std::atan2(sn, q.coords.dot(o));
  const Vec3 dir = tangential / sn;
  return model_.radius() * angle * Vec2(dir.dot(frame_[0]), dir.dot(frame_[1]));
}

Vec2 LocalChart::components(const Vec3& v) const { return Vec2(v.dot(frame_[0]), v.dot(frame_[1])); }

SurfacePoint LocalChart::point(const Vec2& c) const {
  if (model_.kind() != SurfaceKind::RoundSphere)
    return model_.normalize({origin_.coords + Vec3(c[0], c[1], 0.0)});
  const double len = c.norm();
  if (len == 0.0) return origin_;
  const Vec3 u = (c[0] * frame_[0] + c[1] * frame_[1]) / len;
  const double a = len / model_.radius();
  return SurfacePoint::embedded((std::cos(a) * origin_.coords + std::sin(a) * u).normalized());
}

}  // namespace skylink
