#include <gtest/gtest.h>

#include "skylink/error.hpp"
#include "skylink/scenario.hpp"

using namespace skylink;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

TEST(Scenario, ParsesTorusScenario) {
  const Scenario s = parse_scenario(R"({
    "schema": "skylink-scenario/1",
    "model": {"name": "torus", "periods": [1, 2]},
    "policy": {"n_samples": 256, "tol_null": 1e-8, "lattice_margin": 2, "geodesic": "rk4"},
    "events": {"x": {"point": [0.5, 2.5], "time": 1}},
    "curves": {"g": {"kind": "tilted", "end": "x", "velocity": [0.1, 0.2]}}
  })");
  ASSERT_TRUE(s.model.has_value());
  EXPECT_EQ(s.model->kind(), SurfaceKind::FlatTorus);
  EXPECT_EQ(s.policy.n_samples, 256);
  EXPECT_EQ(s.policy.tol_null_rel, 1e-8);
  EXPECT_EQ(s.policy.lattice_margin, 2);
  EXPECT_EQ(s.policy.geodesic, GeodesicMethod::RungeKutta4);
  EXPECT_NEAR(s.event("x").point.y(), 0.5, 1e-15);
  EXPECT_EQ(s.event("x").time, 1.0);
  const TimelikeCurve g = s.curve("g");
  EXPECT_NEAR(g.max_speed(*s.model), std::hypot(0.1, 0.2), 1e-15);
}

TEST(Scenario, SphereEventsUseLatLon) {
  const Scenario s = parse_scenario(R"({
    "schema": "skylink-scenario/1",
    "model": {"name": "sphere", "radius": 2},
    "events": {"x": {"latlon": [0, 0], "time": 0}}
  })");
  EXPECT_NEAR((s.event("x").point.coords - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/1", "model": {"name": "sphere"},
                        "events": {"x": {"point": [0, 0], "time": 0}}})"),
            ErrorCode::Config);
}

TEST(Scenario, DescriptorOnly) {
  const Scenario s = parse_scenario(R"({
    "schema": "skylink-scenario/1",
    "descriptor": {"dimension": 3, "closed": true, "rational_homology_sphere": true,
                   "pi1_order": 1, "degree_image": 1}
  })");
  ASSERT_TRUE(s.descriptor.has_value());
  EXPECT_EQ(coefficient_group(*s.descriptor).kind, CoefficientGroup::Kind::Trivial);
  EXPECT_THROW(s.spacetime(), Error);
}

TEST(Scenario, DescriptorDefaults) {
  const Scenario s = parse_scenario(R"({
    "schema": "skylink-scenario/1",
    "descriptor": {"dimension": 3, "closed": true, "rational_homology_sphere": true, "pi1_order": 7}
  })");
  const CoefficientGroup g = coefficient_group(*s.descriptor);
  EXPECT_EQ(g.kind, CoefficientGroup::Kind::UnknownQuotient);
  EXPECT_EQ(g.divisor_hint, 7);
}

TEST(Scenario, Errors) {
  EXPECT_EQ(code_of("not json"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/2"})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/1", "extra": 1})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/1", "model": {"name": "cone"}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/1", "model": {"name": "torus", "periods": [1, -1]}})"),
            ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/1", "model": {"name": "plane"},
                        "curves": {"g": {"kind": "vertical", "end": "nobody"}}})"),
            ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/1", "model": {"name": "plane"},
                        "policy": {"n_samples": 4}})"),
            ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"schema": "skylink-scenario/1", "events": {"x": {"point": [0, 0], "time": 0}}})"),
            ErrorCode::Config);

  const Scenario s = parse_scenario(R"({"schema": "skylink-scenario/1", "model": {"name": "plane"}})");
  try {
    s.event("x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Config);
  }
}

TEST(Scenario, MissingFileIsIoError) {
  try {
    load_scenario("/nonexistent/scenario.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

}  // namespace
