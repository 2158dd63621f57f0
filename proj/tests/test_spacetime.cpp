#include <gtest/gtest.h>

#include <cmath>

#include "skylink/error.hpp"
#include "skylink/spacetime.hpp"

using namespace skylink;

namespace {

TEST(Causal, PlaneKinds) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  const Event x = st.event(0, 0, 0);
  EXPECT_EQ(causal_relation(st, x, st.event(0.3, 0, 1)).kind, CausalKind::Chronological);
  EXPECT_EQ(causal_relation(st, x, st.event(2, 0, 1)).kind, CausalKind::Unrelated);
  const CausalVerdict null = causal_relation(st, x, st.event(0.6, 0.8, 1));
  EXPECT_EQ(null.kind, CausalKind::Null);
  EXPECT_EQ(null.connections.size(), 1u);
  const CausalVerdict past = causal_relation(st, x, st.event(0.1, 0, -1));
  EXPECT_EQ(past.kind, CausalKind::Chronological);
  EXPECT_EQ(past.direction, TimeDirection::PastOf);
  EXPECT_TRUE(causal_relation(st, x, x).identical);
}

TEST(Causal, NullTakesPrecedenceOverChronological) {
  // Shortest connection 0.5 < 1.5, but the lattice image at (1.5, 0) is exactly null.
  const StaticSpacetime st(SurfaceModel::flat_torus(1.0, 1.0));
  const CausalVerdict v = causal_relation(st, st.event(0, 0, 0), st.event(0.5, 0, 1.5));
  EXPECT_EQ(v.kind, CausalKind::Null);
  ASSERT_FALSE(v.connections.empty());
  EXPECT_NEAR(v.connections.front().length, 1.5, 1e-12);
}

TEST(Causal, LorentzDistance) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  EXPECT_NEAR(lorentz_distance(st, st.event(0, 0, 0), st.event(0.6, 0, 1)), 0.8, 1e-15);
  EXPECT_EQ(lorentz_distance(st, st.event(0, 0, 0), st.event(2, 0, 1)), 0.0);
  EXPECT_EQ(lorentz_distance(st, st.event(0, 0, 1), st.event(0, 0, 0)), 0.0);
}

TEST(Causal, NullConeExp) {
  const StaticSpacetime st(SurfaceModel::round_sphere(1.0));
  const Event x = st.event(0.0, 0.0, 2.0);
  const Event e = null_cone_exp(st, x, 0.7, 1.2);
  EXPECT_NEAR(st.surface().distance(x.point, e.point), 1.2, 1e-12);
  EXPECT_EQ(e.time, 3.2);
  EXPECT_THROW(null_cone_exp(st, x, 0.0, -0.1), Error);
}

TEST(Curvature, FlatProductsVanish) {
  const StaticSpacetime st(SurfaceModel::flat_torus(1.0, 1.0));
  const TimelikePlane plane{st.event(0.2, 0.1, 0), Vec3(1, 0, 0), Vec3(0, 0.3, 1)};
  EXPECT_NEAR(timelike_sectional_curvature(st, plane), 0.0, 1e-12);
  EXPECT_TRUE(st.timelike_curvature_certified_nonnegative());
}

TEST(Curvature, SphereBoostedPlaneIsNegative) {
  const double r = 1.5, lat = 0.3;
  const StaticSpacetime st(SurfaceModel::round_sphere(r));
  for (double c : {0.2, 0.5, 0.9}) {
    // Unit lat/lon vectors in chart components, then w = dt + c e_lon.
    const Vec3 v(1.0 / r, 0, 0);
    const Vec3 w(0, c / (r * std::cos(lat)), 1);
    const double k = timelike_sectional_curvature(st, {st.event(lat, 0.4, 0), v, w});
    EXPECT_NEAR(k, c * c / (r * r * (c * c - 1.0)), 1e-6);
    EXPECT_LT(k, 0.0);
  }
  EXPECT_FALSE(st.timelike_curvature_certified_nonnegative());
}

TEST(Curvature, SpatialPlaneGivesGaussCurvature) {
  const StaticSpacetime st(SurfaceModel::round_sphere(2.0));
  const double lat = -0.5;
  const TimelikePlane plane{st.event(lat, 1.0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  EXPECT_NEAR(sectional_curvature(st, plane), 0.25, 1e-6);
  try {
    timelike_sectional_curvature(st, plane);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotTimelike);
  }
}

TEST(Curvature, NullPlaneRejected) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  try {
    sectional_curvature(st, {st.event(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NullPlane);
  }
}

EventPath path(const StaticSpacetime& st, Event a, Event b, int n) {
  EventPath p;
  for (int i = 0; i <= n; ++i) {
    const double f = static_cast<double>(i) / n;
    p.params.push_back(f);
    p.samples.push_back({st.surface().normalize({(1 - f) * a.point.coords + f * b.point.coords}),
                         (1 - f) * a.time + f * b.time});
  }
  return p;
}

TEST(NullMoment, FindsCrossingOnPlane) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  const Event x = st.event(0, 0, 0);
  // y moves from (1, 0, 0.2) to (1, 0, 1.8); null at time 1, i.e. tau = 0.5.
  const auto tau = null_moment_detector(st, path(st, x, x, 10), path(st, st.event(1, 0, 0.2), st.event(1, 0, 1.8), 10));
  ASSERT_TRUE(tau.has_value());
  EXPECT_NEAR(*tau, 0.5, 1e-9);
}

TEST(NullMoment, NoneWhileUnrelated) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  const auto p1 = path(st, st.event(0, 0, 0), st.event(1, 0, 0), 16);
  const auto p2 = path(st, st.event(0, 2, 0.5), st.event(1, 2, -0.5), 16);
  EXPECT_FALSE(null_moment_detector(st, p1, p2).has_value());
  EXPECT_TRUE(null_moments_all(st, p1, p2).empty());
}

TEST(NullMoment, RejectsMismatchedGrids) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  EXPECT_THROW(null_moment_detector(st, path(st, st.event(0, 0, 0), st.event(1, 0, 0), 4),
                                    path(st, st.event(0, 0, 0), st.event(1, 0, 0), 5)),
               Error);
}

}  // namespace
