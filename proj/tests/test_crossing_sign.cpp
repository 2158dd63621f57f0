#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "skylink/alk.hpp"
#include "skylink/error.hpp"

using namespace skylink;

namespace {

constexpr double kPi = 3.14159265358979323846;

double cofactor_det(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) +
         c[0] * (a[1] * b[2] - a[2] * b[1]);
}

TEST(FrameSign, IdentityIsPositive) {
  EXPECT_EQ(crossing_sign_frame(Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()), +1);
  EXPECT_EQ(crossing_sign_frame(Vec3::UnitY(), Vec3::UnitX(), Vec3::UnitZ()), -1);
}

TEST(FrameSign, MatchesBruteForceAndOrderSymmetry) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const Vec3 a(g(rng), g(rng), g(rng)), w(g(rng), g(rng), g(rng)), b(g(rng), g(rng), g(rng));
    const double det = cofactor_det(a, w, b);
    if (std::abs(det) < 1e-6) continue;
    ++checked;
    EXPECT_EQ(crossing_sign_frame(a, w, b), det > 0 ? +1 : -1);
    // m = 2: exchanging the fronts and reversing the resolution keeps the sign.
    EXPECT_EQ(crossing_sign_frame(b, -w, a), crossing_sign_frame(a, w, b));
  }
  EXPECT_GT(checked, 450);
}

TEST(FrameSign, DegenerateFrameThrows) {
  try {
    crossing_sign_frame(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 1e-12));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateResolution);
  }
}

Tangency quad(double c1, double c2) {
  Tangency t;
  t.f1 = {0, 0, c1};
  t.f2 = {0, 0, c2};
  return t;
}

TEST(TangencySign, ZeroAndParabola) {
  EXPECT_EQ(tangency_sign(quad(0, 1), +1, +1), +1);
  EXPECT_EQ(tangency_sign(quad(1, 0), +1, +1), -1);
}

TEST(TangencySign, NegativeAlphaPositiveHessianGivesMinusEpsilon) {
  EXPECT_EQ(tangency_sign(quad(0, 0.7), +1, -1), -1);
  EXPECT_EQ(tangency_sign(quad(0, 0.7), -1, -1), +1);
}

TEST(TangencySign, DegenerateHessianThrows) {
  try {
    tangency_sign(quad(0.5, 0.5), +1, +1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateTangency);
  }
  EXPECT_THROW(tangency_sign(quad(0, 1), 0, 1), Error);
}

// Circle of radius r through p with unit normal n at p (outward if inside).
Front circle_through(const Vec3& p, const Vec3& n, double r, bool outward, int dir, int samples) {
  const Vec3 center = outward ? Vec3(p - r * n) : Vec3(p + r * n);
  const double a0 = std::atan2(p[1] - center[1], p[0] - center[0]);
  std::vector<SurfacePoint> pts;
  std::vector<Vec3> normals;
  for (int i = 0; i < samples; ++i) {
    const double a = a0 + dir * 2 * kPi * i / samples;
    const Vec3 u(std::cos(a), std::sin(a), 0);
    pts.push_back(SurfacePoint{center + r * u});
    normals.push_back(outward ? u : Vec3(-u));
  }
  return Front::from_curve(SurfaceModel::flat_plane(), 0.0, pts, normals);
}

Vec3 lift_tangent(const Front& f, int i) {
  const auto& s = f.samples();
  const std::size_t n = s.size();
  const auto& a = s[(i + n - 1) % n];
  const auto& b = s[(i + 1) % n];
  const double th = std::remainder(std::atan2(b.conormal.components[1], b.conormal.components[0]) -
                                       std::atan2(a.conormal.components[1], a.conormal.components[0]),
                                   2 * kPi);
  const Vec3 dp = b.point.coords - a.point.coords;
  return Vec3(dp[0], dp[1], th);
}

// Random circle pairs tangent at p with a common conormal; the tangency formula
// must match the frame determinant on the lifts.
TEST(TangencySign, AgreesWithFrameOnCirclePairs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  int agree = 0;
  const int scenes = 200;
  for (int k = 0; k < scenes; ++k) {
    const double phi = 2 * kPi * u(rng);
    const Vec3 n(std::cos(phi), std::sin(phi), 0);
    const Vec3 p(u(rng) - 0.5, u(rng) - 0.5, 0);
    double r1 = 0, r2 = 0;
    bool o1 = false, o2 = false;
    do {
      r1 = 0.3 + 2 * u(rng);
      r2 = 0.3 + 2 * u(rng);
      o1 = u(rng) < 0.5;
      o2 = u(rng) < 0.5;
    } while (o1 == o2 && std::abs(1 / r1 - 1 / r2) < 0.2);
    const int d1 = u(rng) < 0.5 ? 1 : -1, d2 = u(rng) < 0.5 ? 1 : -1, alpha = u(rng) < 0.5 ? 1 : -1;
    const Front a = circle_through(p, n, r1, o1, d1, 720);
    const Front b = circle_through(p, n, r2, o2, d2, 720);
    const Tangency tg = make_tangency(a, 0, b, 0, SurfacePoint{p}, n);
    const int formula = tangency_sign(tg, tg.epsilon, alpha);
    const Vec3 t(-n[1], n[0], 0);
    const Vec3 v = alpha * (0.1 + u(rng)) * n + (u(rng) - 0.5) * 3 * t;
    const int frame = crossing_sign_frame(lift_tangent(a, 0), Vec3(-v[0], -v[1], 0), lift_tangent(b, 0));
    agree += formula == frame;
  }
  EXPECT_EQ(agree, scenes);
}

}  // namespace
