#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "skylink/error.hpp"
#include "skylink/surface.hpp"

using namespace skylink;

namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(Surface, SphereChristoffelMatchesFiniteDifferences) {
  const SurfaceModel s = SurfaceModel::round_sphere(1.7);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lat(-1.3, 1.3), lon(-kPi, kPi);
  for (int k = 0; k < 20; ++k) {
    const SurfacePoint p = s.point(lat(rng), lon(rng));
    const Christoffel a = s.christoffel_at(p);
    const Christoffel b = s.christoffel_fd(p);
    for (int i = 0; i < 2; ++i) EXPECT_LT((a[i] - b[i]).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(Surface, FlatModelsHaveZeroChristoffels) {
  for (const SurfaceModel& m : {SurfaceModel::flat_plane(), SurfaceModel::flat_torus(1.0, 2.0)}) {
    const Christoffel g = m.christoffel_at(m.point(0.3, 0.4));
    EXPECT_EQ(g[0].norm() + g[1].norm(), 0.0);
  }
}

TEST(Surface, FramesArePositiveAndOrthonormal) {
  const SurfaceModel s = SurfaceModel::round_sphere(1.0);
  for (double lat : {-1.5707963267948966, -0.7, 0.0, 0.4, 1.2, 1.5707963267948966}) {
    const SurfacePoint p = s.point(lat, 0.9);
    const auto f = s.frame(p);
    EXPECT_NEAR(f[0].norm(), 1.0, 1e-14);
    EXPECT_NEAR(f[1].norm(), 1.0, 1e-14);
    EXPECT_NEAR(f[0].dot(f[1]), 0.0, 1e-14);
    EXPECT_NEAR(f[0].dot(p.coords), 0.0, 1e-14);
    EXPECT_GT(f[0].cross(f[1]).dot(p.coords), 0.0);
  }
}

TEST(Surface, Rk4AgreesWithGreatCircles) {
  const SurfaceModel s = SurfaceModel::round_sphere(2.0);
  const SurfacePoint p = s.point(0.2, -0.4);
  for (double a : {0.0, 1.0, 2.5, 4.0}) {
    const TangentVector u = s.direction(p, a);
    const auto rk = s.integrate_geodesic_rk4(p, u, 9.0, 1e-3);
    const auto exact = s.integrate_geodesic(p, u, 9.0, 1.0);
    EXPECT_LT(s.distance(rk.first, exact.first), 1e-9);
    EXPECT_NEAR(s.norm(rk.second), 1.0, 1e-9);
  }
}

TEST(Surface, GeodesicRejectsBadInput) {
  const SurfaceModel s = SurfaceModel::round_sphere(1.0);
  const SurfacePoint p = s.point(0.0, 0.0);
  EXPECT_THROW(s.integrate_geodesic(p, {p, 2.0 * s.frame(p)[0]}, 1.0, 0.1), Error);
  EXPECT_THROW(s.integrate_geodesic(p, s.direction(p, 0.0), -1.0, 0.1), Error);
  EXPECT_THROW(s.integrate_geodesic_rk4(p, s.direction(p, 0.0), 1.0, 0.0), Error);
}

TEST(Surface, ValidateRejectsNonUnitSpherePoints) {
  const SurfaceModel s = SurfaceModel::round_sphere(1.0);
  try {
    s.validate(SurfacePoint::embedded(Vec3(1.0, 1e-3, 0.0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Domain);
  }
}

TEST(Surface, RayJacobiFieldMatchesFiniteDifference) {
  for (const SurfaceModel& m : {SurfaceModel::flat_plane(), SurfaceModel::round_sphere(1.3)}) {
    const SurfacePoint p = m.point(0.3, 0.5);
    const double s = 1.1, t = 1.7, h = 1e-6;
    const RayState r = m.ray(p, s, t);
    const Vec3 fd = (m.ray(p, s + h, t).point.coords - m.ray(p, s - h, t).point.coords) / (2 * h);
    const double scale = m.kind() == SurfaceKind::RoundSphere ? m.radius() : 1.0;
    EXPECT_LT((scale * fd - r.d_ds).norm(), 1e-7);
  }
}

TEST(Surface, TorusConnectionsMatchBruteForce) {
  const SurfaceModel t = SurfaceModel::flat_torus(1.0, 1.0);
  const auto cs = t.geodesic_connections(t.point(0, 0), t.point(0.5, 0), 2.2);
  int brute = 0;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b) brute += std::hypot(0.5 + a, b) <= 2.2;
  EXPECT_EQ(static_cast<int>(cs.size()), brute);
  EXPECT_EQ(brute, 16);
  for (std::size_t i = 1; i < cs.size(); ++i) EXPECT_LE(cs[i - 1].length, cs[i].length);
}

TEST(Surface, SphereConnectionsWrap) {
  const SurfaceModel s = SurfaceModel::round_sphere(1.0);
  const SurfacePoint p = s.point(0, 0), q = s.point(0, 1.0);
  const auto cs = s.geodesic_connections(p, q, 7.5);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_NEAR(cs[0].length, 1.0, 1e-12);
  EXPECT_NEAR(cs[1].length, 2 * kPi - 1.0, 1e-12);
  EXPECT_NEAR(cs[2].length, 2 * kPi + 1.0, 1e-12);
  const auto anti = s.geodesic_connections(p, SurfacePoint::embedded(-p.coords), 4.0);
  ASSERT_EQ(anti.size(), 1u);
  EXPECT_TRUE(anti[0].whole_family);
}

TEST(Surface, LocalChartRoundTrip) {
  for (const SurfaceModel& m :
       {SurfaceModel::flat_plane(), SurfaceModel::flat_torus(1.0, 1.5), SurfaceModel::round_sphere(0.8)}) {
    const LocalChart chart = m.local_chart(m.point(0.2, 0.3));
    const Vec2 c(0.11, -0.07);
    EXPECT_LT((chart.coords(chart.point(c)) - c).norm(), 1e-12) << m.name();
  }
}

TEST(Surface, TorusDisplacementIsMinimalImage) {
  const SurfaceModel t = SurfaceModel::flat_torus(1.0, 1.0);
  const Vec3 d = t.displacement(t.point(0.95, 0.02), t.point(0.05, 0.98));
  EXPECT_NEAR(d[0], 0.1, 1e-12);
  EXPECT_NEAR(d[1], -0.04, 1e-12);
}

}  // namespace
