#include "skylink/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "skylink/error.hpp"

namespace skylink {

namespace {

using nlohmann::json;

[[noreturn]] void config(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) config(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) config("unknown field '" + key + "' in " + where);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) config(where + " must be a number");
  return j.get<double>();
}

SurfaceModel parse_model(const json& j) {
  check_keys(j, {"name", "periods", "radius"}, "model");
  if (!j.contains("name") || !j["name"].is_string()) config("model.name is required");
  const std::string name = j["name"];
  if (name == "plane") return SurfaceModel::flat_plane();
  if (name == "torus") {
    if (!j.contains("periods") || !j["periods"].is_array() || j["periods"].size() != 2)
      config("torus needs periods [px, py]");
    const double px = number(j["periods"][0], "model.periods");
    const double py = number(j["periods"][1], "model.periods");
    if (!(px > 0.0) || !(py > 0.0)) config("torus periods must be positive");
    return SurfaceModel::flat_torus(px, py);
  }
  if (name == "sphere") {
    const double r = j.contains("radius") ? number(j["radius"], "model.radius") : 1.0;
    if (!(r > 0.0)) config("sphere radius must be positive");
    return SurfaceModel::round_sphere(r);
  }
  config("unknown model '" + name + "'");
}

NumericPolicy parse_policy(const json& j) {
  check_keys(j,
             {"n_samples", "t_grid", "rk4_step", "geodesic", "tol_hit", "tol_refocus", "tol_null", "tol_align",
              "lattice_margin"},
             "policy");
  NumericPolicy p;
  auto positive = [&](const char* key, double& field) {
    if (!j.contains(key)) return;
    field = number(j[key], std::string("policy.") + key);
    if (!(field > 0.0)) config(std::string("policy.") + key + " must be positive");
  };
  if (j.contains("n_samples")) {
    p.n_samples = static_cast<int>(number(j["n_samples"], "policy.n_samples"));
    if (p.n_samples < 16) config("policy.n_samples must be at least 16");
  }
  if (j.contains("t_grid")) {
    p.t_grid = static_cast<int>(number(j["t_grid"], "policy.t_grid"));
    if (p.t_grid < 8) config("policy.t_grid must be at least 8");
  }
  positive("rk4_step", p.rk4_step);
  positive("tol_refocus", p.tol_refocus);
  positive("tol_null", p.tol_null_rel);
  positive("tol_align", p.tol_align);
  if (j.contains("tol_hit")) {
    p.tol_hit = number(j["tol_hit"], "policy.tol_hit");
    if (p.tol_hit < 0.0) config("policy.tol_hit must be nonnegative");
  }
  if (j.contains("lattice_margin")) {
    p.lattice_margin = static_cast<int>(number(j["lattice_margin"], "policy.lattice_margin"));
    if (p.lattice_margin < 0) config("policy.lattice_margin must be nonnegative");
  }
  if (j.contains("geodesic")) {
    const std::string g = j["geodesic"].is_string() ? j["geodesic"].get<std::string>() : "";
    if (g == "closed_form")
      p.geodesic = GeodesicMethod::ClosedForm;
    else if (g == "rk4")
      p.geodesic = GeodesicMethod::RungeKutta4;
    else
      config("policy.geodesic must be closed_form or rk4");
  }
  return p;
}

Event parse_event(const json& j, const std::optional<SurfaceModel>& model, const std::string& where) {
  check_keys(j, {"point", "latlon", "time"}, where);
  if (!model) config(where + ": events need a model");
  if (!j.contains("time")) config(where + ".time is required");
  const double time = number(j["time"], where + ".time");
  const bool sphere = model->kind() == SurfaceKind::RoundSphere;
  const char* key = sphere ? "latlon" : "point";
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
    config(where + (sphere ? ".latlon [lat, lon] is required on the sphere" : ".point [x, y] is required"));
  const double a = number(j[key][0], where);
  const double b = number(j[key][1], where);
  if (sphere && std::abs(a) > 1.5707963267948966 + 1e-12) config(where + ": latitude out of range");
  return {model->point(a, b), time};
}

ManifoldDescriptor parse_descriptor(const json& j) {
  check_keys(j,
             {"dimension", "closed", "orientable", "rational_homology_sphere", "pi1_order", "degree_image",
              "homeo_even_sphere"},
             "descriptor");
  ManifoldDescriptor d;
  auto flag = [&](const char* key, bool& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_boolean()) config(std::string("descriptor.") + key + " must be true or false");
    field = j[key];
  };
  if (!j.contains("dimension")) config("descriptor.dimension is required");
  d.dimension = static_cast<int>(number(j["dimension"], "descriptor.dimension"));
  flag("closed", d.closed);
  flag("orientable", d.orientable);
  flag("rational_homology_sphere", d.rational_homology_sphere);
  flag("homeo_even_sphere", d.homeo_even_sphere);
  d.pi1_order = std::nullopt;
  if (j.contains("pi1_order")) {
    if (j["pi1_order"].is_string() && j["pi1_order"] == "infinite")
      d.pi1_order = std::nullopt;
    else
      d.pi1_order = static_cast<long>(number(j["pi1_order"], "descriptor.pi1_order"));
  }
  d.degree_image = d.closed ? std::nullopt : std::optional<long>(0);
  if (j.contains("degree_image")) {
    if (j["degree_image"].is_string() && j["degree_image"] == "unknown")
      d.degree_image = std::nullopt;
    else
      d.degree_image = static_cast<long>(number(j["degree_image"], "descriptor.degree_image"));
  }
  return d;
}

CurveSpec parse_curve(const json& j, const std::optional<SurfaceModel>& model, const std::string& where) {
  check_keys(j, {"kind", "end", "velocity", "samples"}, where);
  CurveSpec c;
  if (!j.contains("kind") || !j["kind"].is_string()) config(where + ".kind is required");
  c.kind = j["kind"];
  if (c.kind == "vertical" || c.kind == "tilted") {
    if (!j.contains("end") || !j["end"].is_string()) config(where + ".end must name an event");
    c.end = j["end"];
    if (c.kind == "tilted") {
      if (!j.contains("velocity") || !j["velocity"].is_array() || j["velocity"].size() < 2 ||
          j["velocity"].size() > 3)
        config(where + ".velocity is required for tilted curves");
      for (std::size_t i = 0; i < j["velocity"].size(); ++i) c.velocity[static_cast<long>(i)] = number(j["velocity"][i], where);
    }
  } else if (c.kind == "sampled") {
    if (!j.contains("samples") || !j["samples"].is_array() || j["samples"].empty())
      config(where + ".samples must be a nonempty list");
    for (std::size_t i = 0; i < j["samples"].size(); ++i)
      c.samples.push_back(parse_event(j["samples"][i], model, where + ".samples[" + std::to_string(i) + "]"));
  } else {
    config(where + ".kind must be vertical, tilted or sampled");
  }
  return c;
}

}  // namespace

StaticSpacetime Scenario::spacetime() const {
  if (!model) config("scenario has no model");
  return StaticSpacetime(*model, policy);
}

const Event& Scenario::event(const std::string& name) const {
  const auto it = events.find(name);
  if (it == events.end()) config("unknown event '" + name + "'");
  return it->second;
}

TimelikeCurve Scenario::curve(const std::string& name) const {
  const auto it = curves.find(name);
  if (it == curves.end()) config("unknown curve '" + name + "'");
  const CurveSpec& c = it->second;
  if (c.kind == "vertical") return TimelikeCurve::vertical(event(c.end));
  if (c.kind == "tilted") return TimelikeCurve::tilted(event(c.end), {event(c.end).point, c.velocity});
  try {
    return TimelikeCurve::sampled(c.samples);
  } catch (const Error& e) {
    config("curve '" + name + "': " + e.what());
  }
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config(std::string("scenario is not valid JSON: ") + e.what());
  }
  check_keys(j, {"schema", "model", "policy", "events", "curves", "descriptor"}, "scenario");
  if (!j.contains("schema") || j["schema"] != kScenarioSchema)
    config(std::string("scenario schema must be \"") + kScenarioSchema + "\"");

  Scenario s;
  if (j.contains("model")) s.model = parse_model(j["model"]);
  if (j.contains("policy")) s.policy = parse_policy(j["policy"]);
  if (j.contains("events")) {
    if (!j["events"].is_object()) config("events must be an object");
    for (const auto& [name, ev] : j["events"].items()) s.events[name] = parse_event(ev, s.model, "events." + name);
  }
  if (j.contains("curves")) {
    if (!j["curves"].is_object()) config("curves must be an object");
    for (const auto& [name, cv] : j["curves"].items()) s.curves[name] = parse_curve(cv, s.model, "curves." + name);
    for (const auto& [name, cv] : s.curves)
      if (!cv.end.empty()) s.event(cv.end);
  }
  if (j.contains("descriptor")) s.descriptor = parse_descriptor(j["descriptor"]);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read scenario '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

}  // namespace skylink
