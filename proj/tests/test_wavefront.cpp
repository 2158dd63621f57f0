#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "skylink/error.hpp"
#include "skylink/front_io.hpp"
#include "skylink/wavefront.hpp"

using namespace skylink;

namespace {

constexpr double kPi = 3.14159265358979323846;

Front circle(const Vec3& c, double r, int n, double slice = 0.0) {
  std::vector<SurfacePoint> pts;
  std::vector<Vec3> normals;
  for (int i = 0; i < n; ++i) {
    const double s = 2 * kPi * i / n;
    const Vec3 u(std::cos(s), std::sin(s), 0);
    pts.push_back(SurfacePoint{c + r * u});
    normals.push_back(u);
  }
  return Front::from_curve(SurfaceModel::flat_plane(), slice, pts, normals);
}

TEST(Front, PlaneFrontIsCircleWithOutwardConormal) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  const Front f = propagate_front(st, st.event(1, 2, 0.5), 1.5, 256);
  ASSERT_EQ(f.size(), 256u);
  EXPECT_DOUBLE_EQ(f.slice_time(), 2.0);
  for (const auto& s : f.samples()) {
    const Vec3 d = s.point.coords - Vec3(1, 2, 0);
    EXPECT_NEAR(d.norm(), 1.5, 1e-12);
    EXPECT_NEAR(d.normalized().dot(s.conormal.components), 1.0, 1e-12);
  }
  EXPECT_LT(f.legendrian_defect(), 1e-6);
}

TEST(Front, RequiresEnoughSamples) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  EXPECT_THROW(propagate_front(st, st.event(0, 0, 0), 1.0, 8), Error);
}

TEST(Front, SphereRefocusesAtAntipodeAndSource) {
  NumericPolicy policy;
  policy.geodesic = GeodesicMethod::RungeKutta4;
  const StaticSpacetime st(SurfaceModel::round_sphere(1.0), policy);
  const Event x = st.event(-0.4, 1.0, 0.0);
  const auto anti = refocus_detect(propagate_front(st, x, kPi, 256));
  ASSERT_TRUE(anti.has_value());
  EXPECT_LT(st.surface().distance(*anti, SurfacePoint::embedded(-x.point.coords)), 1e-6);
  const auto back = refocus_detect(propagate_front(st, x, 2 * kPi, 256));
  ASSERT_TRUE(back.has_value());
  EXPECT_LT(st.surface().distance(*back, x.point), 1e-6);
  EXPECT_FALSE(refocus_detect(propagate_front(st, x, 1.0, 256)).has_value());
}

TEST(Front, LegendrianOnSphereAndTorus) {
  for (const SurfaceModel& m : {SurfaceModel::round_sphere(1.2), SurfaceModel::flat_torus(1.0, 1.0)}) {
    const StaticSpacetime st(m);
    EXPECT_LT(propagate_front(st, st.event(0.3, 0.3, 0), 2.2, 512).legendrian_defect(), 1e-6) << m.name();
  }
}

TEST(Front, TranslationIsFlatOnly) {
  const StaticSpacetime st(SurfaceModel::round_sphere(1.0));
  EXPECT_THROW(propagate_front(st, st.event(0, 0, 0), 1.0, 32).translated(Vec3(0.1, 0, 0)), Error);
}

TEST(Quadratic, ExactOnParabola) {
  std::vector<Vec2> pts;
  for (double x : {-0.2, -0.1, 0.0, 0.1, 0.2}) pts.emplace_back(x, 0.3 - 0.5 * x + 1.25 * x * x);
  const QuadraticFit q = fit_quadratic(pts);
  EXPECT_NEAR(q.c0, 0.3, 1e-12);
  EXPECT_NEAR(q.c1, -0.5, 1e-12);
  EXPECT_NEAR(q.second_derivative(), 2.5, 1e-10);
}

TEST(TangencyScan, InternalTangencyIsDangerous) {
  // Radius 1 and 0.5 circles touching at (1, 0) from inside: conormals agree.
  const Front a = circle(Vec3(0, 0, 0), 1.0, 512);
  const Front b = circle(Vec3(0.5, 0, 0), 0.5, 512);
  const auto ts = front_tangency_scan(a, b);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_LT((ts[0].point.coords - Vec3(1, 0, 0)).norm(), 1e-3);
  EXPECT_NEAR(ts[0].conormal.dot(Vec3(1, 0, 0)), 1.0, 1e-4);
  // f'' = 1/r for each branch in the chart whose second axis is -n.
  EXPECT_NEAR(ts[0].f1.second_derivative(), 1.0, 1e-3);
  EXPECT_NEAR(ts[0].f2.second_derivative(), 2.0, 1e-3);
  EXPECT_EQ(ts[0].epsilon, +1);
}

TEST(TangencyScan, ExternalTangencyIsNot) {
  const Front a = circle(Vec3(0, 0, 0), 1.0, 512);
  const Front b = circle(Vec3(1.5, 0, 0), 0.5, 512);
  EXPECT_TRUE(front_tangency_scan(a, b).empty());
}

TEST(TangencyScan, DisjointFrontsHaveNone) {
  EXPECT_TRUE(front_tangency_scan(circle(Vec3(0, 0, 0), 1.0, 256), circle(Vec3(5, 0, 0), 1.0, 256)).empty());
}

TEST(FrontIo, CsvRoundTrip) {
  const StaticSpacetime st(SurfaceModel::round_sphere(1.0));
  const Front f = propagate_front(st, st.event(0.2, 0.1, 1.0), 0.8, 64);
  std::stringstream buf;
  write_front_csv(buf, f);
  const std::string text = buf.str();
  EXPECT_EQ(text.substr(0, 16), "s,px,py,nx,ny,t\n");
  const auto rows = read_front_csv(buf);
  const auto expect = front_rows(f);
  ASSERT_EQ(rows.size(), 64u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].px, expect[i].px, 1e-11);
    EXPECT_NEAR(rows[i].ny, expect[i].ny, 1e-11);
    EXPECT_NEAR(rows[i].t, 0.8, 1e-12);
  }
}

TEST(FrontIo, CsvRejectsBadHeader) {
  std::stringstream buf("x,y\n1,2\n");
  EXPECT_THROW(read_front_csv(buf), Error);
}

TEST(FrontIo, SvgHasPolylineTicksAndRefocus) {
  const StaticSpacetime st(SurfaceModel::flat_plane());
  const Front f = propagate_front(st, st.event(0, 0, 0), 1.0, 128);
  std::stringstream buf;
  SvgOptions opt;
  opt.tick_every = 16;
  opt.refocus = SurfacePoint::planar(0, 0);
  write_front_svg(buf, f, opt);
  const std::string svg = buf.str();
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  std::size_t ticks = 0;
  for (std::size_t pos = 0; (pos = svg.find("<line", pos)) != std::string::npos; ++pos) ++ticks;
  EXPECT_EQ(ticks, 8u);
  EXPECT_NE(svg.find("refocus"), std::string::npos);
}

}  // namespace
