#pragma once

#include <map>
#include <optional>
#include <string>

#include "skylink/alk.hpp"

namespace skylink {

inline constexpr const char* kScenarioSchema = "skylink-scenario/1";

struct CurveSpec {
  std::string kind;  // vertical | tilted | sampled
  std::string end;   // event name (vertical, tilted)
  Vec3 velocity = Vec3::Zero();
  std::vector<Event> samples;
};

struct Scenario {
  std::optional<SurfaceModel> model;
  NumericPolicy policy;
  std::map<std::string, Event> events;
  std::map<std::string, CurveSpec> curves;
  std::optional<ManifoldDescriptor> descriptor;

  // Throw Config when the model is missing or a name does not resolve.
  StaticSpacetime spacetime() const;
  const Event& event(const std::string& name) const;
  TimelikeCurve curve(const std::string& name) const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace skylink
