#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skylink/numeric_policy.hpp"

namespace skylink {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// A point of the Cauchy surface. Flat models store chart coordinates in
// coords[0..1] (coords[2] == 0); the round sphere stores the embedded unit
// vector. Lat/long only appears at I/O boundaries.
struct SurfacePoint {
  Vec3 coords = Vec3::Zero();

  static SurfacePoint planar(double x, double y) { return {Vec3(x, y, 0.0)}; }
  static SurfacePoint embedded(const Vec3& unit) { return {unit}; }

  double x() const { return coords[0]; }
  double y() const { return coords[1]; }
};

// Flat models: components are chart components (third entry zero).
// Sphere: the tangent vector in R^3 of the physical (radius-r) embedding, so
// the metric is the ambient dot product.
struct TangentVector {
  SurfacePoint base;
  Vec3 components = Vec3::Zero();
};

// Gamma[i](j, k) = Γ^i_{jk} in the model chart.
using Christoffel = std::array<Mat2, 2>;

struct GeodesicConnection {
  TangentVector direction;  // unit initial velocity at p (arbitrary when whole_family)
  double length = 0.0;
  bool whole_family = false;  // every initial direction realizes this length
};

// Endpoint data of the unit-speed ray from p in direction u(s), at arclength t.
struct RayState {
  SurfacePoint point;
  Vec3 velocity;  // d/dt, unit
  Vec3 d_ds;      // Jacobi field d/ds
};

enum class SurfaceKind { FlatPlane, FlatTorus, RoundSphere };

// Oriented, positively oriented orthonormal frame chart around a point.
// coords() is the Riemannian log map for the sphere and the (min-image)
// displacement for the flat models, so coords(q) == 0 iff q == origin.
class LocalChart;

class SurfaceModel {
 public:
  static SurfaceModel flat_plane();
  static SurfaceModel flat_torus(double period_x, double period_y);
  static SurfaceModel round_sphere(double radius);

  SurfaceKind kind() const { return kind_; }
  const std::array<double, 2>& periods() const { return periods_; }
  double radius() const { return radius_; }
  std::string name() const;
  bool is_flat() const { return kind_ != SurfaceKind::RoundSphere; }
  bool is_closed() const { return kind_ != SurfaceKind::FlatPlane; }

  // Flat: chart (x, y), reduced on the torus. Sphere: (lat, lon) in radians.
  SurfacePoint point(double a, double b) const;
  SurfacePoint normalize(const SurfacePoint& p) const;
  // Throws Domain if p is not a valid representation.
  void validate(const SurfacePoint& p, double tol_unit = 1e-12) const;

  Vec2 to_chart(const SurfacePoint& p) const;
  SurfacePoint from_chart(const Vec2& c) const;
  // Chart components of a tangent vector (lat/long basis on the sphere).
  Vec2 chart_components(const TangentVector& v) const;

  Mat2 metric_chart(const Vec2& c) const;
  Mat2 metric_at(const SurfacePoint& p) const;
  Christoffel christoffel_chart(const Vec2& c) const;
  Christoffel christoffel_at(const SurfacePoint& p) const;
  // Central differences of metric_chart; independent of the closed form.
  Christoffel christoffel_fd(const SurfacePoint& p, double h = 1e-5) const;

  double inner(const TangentVector& a, const TangentVector& b) const;
  double norm(const TangentVector& v) const;

  // Positively oriented orthonormal frame (e1, e2) of T_pM.
  std::array<Vec3, 2> frame(const SurfacePoint& p) const;
  // u(s) = cos(s) e1 + sin(s) e2.
  TangentVector direction(const SurfacePoint& p, double s) const;

  // Closed-form geodesic (straight line / great circle).
  std::pair<SurfacePoint, TangentVector> integrate_geodesic(const SurfacePoint& p,
                                                            const TangentVector& v,
                                                            double length,
                                                            double step) const;
  // Classical RK4 on the geodesic equation (embedded form on the sphere).
  std::pair<SurfacePoint, TangentVector> integrate_geodesic_rk4(const SurfacePoint& p,
                                                                const TangentVector& v,
                                                                double length,
                                                                double step) const;
  std::pair<SurfacePoint, TangentVector> integrate_geodesic(const SurfacePoint& p,
                                                            const TangentVector& v,
                                                            double length,
                                                            const NumericPolicy& policy) const;

  RayState ray(const SurfacePoint& p, double s, double t) const;

  double distance(const SurfacePoint& p, const SurfacePoint& q) const;
  // Short displacement q - p: min-image on the torus, ambient chord on the sphere.
  Vec3 displacement(const SurfacePoint& p, const SurfacePoint& q) const;

  // All geodesics p -> q of length <= max_length, ascending by length.
  std::vector<GeodesicConnection> geodesic_connections(const SurfacePoint& p,
                                                       const SurfacePoint& q,
                                                       double max_length,
                                                       int lattice_margin = 1) const;

  // Points that are critical values of exp_p restricted to the unit sphere
  // bundle: p itself and, on the sphere, its antipode.
  std::vector<SurfacePoint> focal_points(const SurfacePoint& p) const;

  LocalChart local_chart(const SurfacePoint& origin) const;

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;

 private:
  SurfaceModel(SurfaceKind kind, std::array<double, 2> periods, double radius)
      : kind_(kind), periods_(periods), radius_(radius) {}

  Vec3 wrap(const Vec3& d) const;

  SurfaceKind kind_;
  std::array<double, 2> periods_{0.0, 0.0};
  double radius_ = 0.0;
};

class LocalChart {
 public:
  LocalChart(SurfaceModel model, SurfacePoint origin);

  const SurfacePoint& origin() const { return origin_; }
  const std::array<Vec3, 2>& frame() const { return frame_; }

  Vec2 coords(const SurfacePoint& q) const;
  // Frame components of a tangent vector; exact at the origin.
  Vec2 components(const Vec3& v) const;
  SurfacePoint point(const Vec2& c) const;

 private:
  SurfaceModel model_;
  SurfacePoint origin_;
  std::array<Vec3, 2> frame_;
};

inline double wrap_angle(double a) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  a = std::fmod(a, two_pi);
  return a < 0 ? a + two_pi : a;
}

}  // namespace skylink
