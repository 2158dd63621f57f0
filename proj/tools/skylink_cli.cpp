// skylink: affine linking numbers of skies in static spacetimes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "skylink/acceptance.hpp"
#include "skylink/alk.hpp"
#include "skylink/error.hpp"
#include "skylink/front_io.hpp"
#include "skylink/scenario.hpp"

using namespace skylink;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kNullRelated = 2, kConfig = 64, kNumeric = 70, kIo = 74 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::CommonNullGeodesic: return kNullRelated;
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Domain:
    case ErrorCode::Unsupported: return kConfig;
    case ErrorCode::Io: return kIo;
    default: return kNumeric;
  }
}

Json point_json(const SurfaceModel& m, const SurfacePoint& p) {
  const Vec2 c = m.to_chart(p);
  return Json::array({c[0], c[1]});
}

Json event_json(const SurfaceModel& m, const Event& e) {
  Json j;
  j[m.kind() == SurfaceKind::RoundSphere ? "latlon" : "point"] = point_json(m, e.point);
  j["time"] = e.time;
  return j;
}

Json connections_json(const SurfaceModel& m, const std::vector<GeodesicConnection>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) {
    Json j;
    j["length"] = c.length;
    if (c.whole_family)
      j["direction"] = "all";
    else {
      const Vec2 d = m.chart_components(c.direction);
      j["direction"] = Json::array({d[0], d[1]});
    }
    out.push_back(j);
  }
  return out;
}

Json ledger_json(const SurfaceModel& m, const std::vector<SignedCrossing>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) {
    Json j;
    j["parameter"] = c.parameter;
    j["ray"] = c.ray;
    j["location"] = point_json(m, c.location);
    j["sign"] = c.sign;
    j["method"] = to_string(c.method);
    out.push_back(j);
  }
  return out;
}

Json alk_json(const SurfaceModel& m, const AlkResult& r) {
  Json j;
  j["value"] = r.value.representative;
  j["count"] = r.value.count;
  j["group"] = r.value.group.to_string();
  j["swapped"] = r.swapped;
  j["perturbed"] = r.perturbed;
  j["target"] = point_json(m, r.target);
  j["crossings"] = ledger_json(m, r.crossings);
  return j;
}

Json descriptor_json(const ManifoldDescriptor& d) {
  Json j;
  j["dimension"] = d.dimension;
  j["closed"] = d.closed;
  j["orientable"] = d.orientable;
  j["rational_homology_sphere"] = d.rational_homology_sphere;
  j["pi1_order"] = d.pi1_order ? Json(*d.pi1_order) : Json("infinite");
  j["degree_image"] = d.degree_image ? Json(*d.degree_image) : Json("unknown");
  j["homeo_even_sphere"] = d.homeo_even_sphere;
  return j;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Config, "bad time '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::Config, "no times given");
  return out;
}

struct Options {
  std::string scenario;
  std::string method = "all";
  std::string out;
  std::string format = "csv";
  std::string curve;
  std::string times = "1";
  std::string level = "quick";
  std::uint64_t seed = 0;
  int steps = 64;
  bool all_moments = false;
  bool mutate_sign = false;
  std::vector<std::string> names;
};

void need_names(const Options& o, std::size_t n, const char* usage) {
  if (o.names.size() != n) throw Error(ErrorCode::Config, std::string("expected ") + usage);
}

Json cmd_alk(const Options& o, const Scenario& sc, int& status) {
  need_names(o, 2, "two event names X Y");
  const StaticSpacetime st = sc.spacetime();
  const SurfaceModel& m = st.surface();
  const Event& x = sc.event(o.names[0]);
  const Event& y = sc.event(o.names[1]);
  const ManifoldDescriptor desc = sc.descriptor ? *sc.descriptor : descriptor_of(m);
  const CoefficientGroup group = coefficient_group(desc);
  const std::string method = o.method;
  if (method != "counting" && method != "intersection" && method != "homotopy" && method != "all")
    throw Error(ErrorCode::Config, "method must be counting, intersection, homotopy or all");

  Json results;
  std::vector<std::pair<std::string, AlkValue>> values;
  if (method == "counting" || method == "all") {
    const AlkResult r = alk_by_counting(st, x, y, group);
    results["counting"] = alk_json(m, r);
    values.emplace_back("counting", r.value);
  }
  if (method == "intersection" || method == "all") {
    // The curve method runs forward in time; at m = 2 the roles may be exchanged.
    const bool swap = y.time < x.time;
    const Event& from = swap ? y : x;
    const Event& to = swap ? x : y;
    TimelikeCurve gamma = o.curve.empty() ? TimelikeCurve::vertical(to) : sc.curve(o.curve);
    if (!o.curve.empty() && swap) throw Error(ErrorCode::Config, "a named curve must end at the later event");
    AlkResult r = alk_by_intersection(st, from, to, gamma, group);
    r.swapped = swap;
    results["intersection"] = alk_json(m, r);
    values.emplace_back("intersection", r.value);
  }
  if (method == "homotopy" || method == "all") {
    if (m.kind() == SurfaceKind::RoundSphere && method == "all") {
      results["homotopy"] = "not available on the sphere";
    } else {
      const AlkResult r = alk_by_homotopy(st, x, y, group);
      results["homotopy"] = alk_json(m, r);
      values.emplace_back("homotopy", r.value);
    }
  }
  bool agree = true;
  for (const auto& v : values) agree = agree && v.second == values.front().second;
  if (!agree) status = kNumeric;

  const CausalityVerdict verdict = causality_from_alk(st, desc, x, y);
  Json report;
  report["inputs"] = {{"x", o.names[0]}, {"y", o.names[1]}, {"method", method},
                      {"events", {{o.names[0], event_json(m, x)}, {o.names[1], event_json(m, y)}}}};
  report["group"] = group.to_string();
  report["results"] = results;
  report["methods_agree"] = agree;
  report["verdict"] = to_string(verdict.call);
  report["oracle"] = {{"causal_relation", to_string(verdict.oracle)}, {"disagreement", verdict.disagreement}};
  return report;
}

Json cmd_front(const Options& o, const Scenario& sc) {
  need_names(o, 1, "one event name X");
  if (o.format != "csv" && o.format != "svg") throw Error(ErrorCode::Config, "format must be csv or svg");
  const StaticSpacetime st = sc.spacetime();
  const Event& x = sc.event(o.names[0]);
  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  Json files = Json::array();
  for (double t : parse_times(o.times)) {
    if (t < 0.0) throw Error(ErrorCode::Config, "front times must be nonnegative");
    const Front f = propagate_front(st, x, t, st.policy().n_samples);
    char name[96];
    std::snprintf(name, sizeof name, "front_%s_t%.6g.%s", o.names[0].c_str(), t, o.format.c_str());
    const std::filesystem::path path = dir / name;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    const auto focus = refocus_detect(f, st.policy().tol_refocus);
    if (o.format == "csv") {
      write_front_csv(out, f);
    } else {
      SvgOptions svg;
      svg.refocus = focus;
      write_front_svg(out, f, svg);
    }
    Json j;
    j["time"] = t;
    j["path"] = path.string();
    j["vertices"] = f.size();
    j["spread"] = front_spread(f);
    j["refocus"] = focus ? point_json(st.surface(), *focus) : Json(nullptr);
    files.push_back(j);
  }
  Json report;
  report["inputs"] = {{"x", o.names[0]}, {"times", o.times}, {"format", o.format}};
  report["files"] = files;
  return report;
}

Json cmd_causal(const Options& o, const Scenario& sc) {
  need_names(o, 2, "two event names X Y");
  const StaticSpacetime st = sc.spacetime();
  const SurfaceModel& m = st.surface();
  const Event& x = sc.event(o.names[0]);
  const Event& y = sc.event(o.names[1]);
  const CausalVerdict v = causal_relation(st, x, y);
  Json report;
  report["inputs"] = {{"x", o.names[0]}, {"y", o.names[1]}};
  report["relation"] = to_string(v.kind);
  report["direction"] = v.direction == TimeDirection::FutureOf ? "future" : "past";
  report["spatial_distance"] = v.spatial_distance;
  report["time_gap"] = v.time_gap;
  report["lorentz_distance"] = v.time_gap >= 0 ? lorentz_distance(st, x, y) : lorentz_distance(st, y, x);
  report["connections"] = connections_json(m, v.connections);
  return report;
}

Json cmd_sight(const Options& o, const Scenario& sc) {
  need_names(o, 3, "three event names X Y Z");
  const StaticSpacetime st = sc.spacetime();
  const Event& x = sc.event(o.names[0]);
  const Event& y = sc.event(o.names[1]);
  const Event& z = sc.event(o.names[2]);
  Json report;
  report["inputs"] = {{"x", o.names[0]}, {"y", o.names[1]}, {"z", o.names[2]}};
  report["alk_xy"] = alk_by_counting(st, x, y).value.count;
  report["alk_xz"] = alk_by_counting(st, x, z).value.count;
  report["sightings"] = sighting_count(st, x, y, z);
  return report;
}

Json cmd_group(const Scenario& sc) {
  if (!sc.descriptor) throw Error(ErrorCode::Config, "scenario has no descriptor block");
  const CoefficientGroup g = coefficient_group(*sc.descriptor);
  const bool good = is_good(*sc.descriptor);
  Json report;
  report["inputs"] = {{"descriptor", descriptor_json(*sc.descriptor)}};
  report["group"] = g.to_string();
  report["good"] = good;
  report["summary"] = "A(M) = " + g.to_string() + "; " + (good ? "good" : "not good");
  return report;
}

EventPath straight_path(const SurfaceModel& m, const Event& a, const Event& b, int steps) {
  EventPath p;
  const Vec3 d = m.kind() == SurfaceKind::RoundSphere ? Vec3::Zero() : m.displacement(a.point, b.point);
  for (int i = 0; i <= steps; ++i) {
    const double f = static_cast<double>(i) / steps;
    SurfacePoint q;
    if (m.kind() == SurfaceKind::RoundSphere)
      q = SurfacePoint::embedded(((1.0 - f) * a.point.coords + f * b.point.coords).normalized());
    else
      q = m.normalize({a.point.coords + f * d});
    p.params.push_back(f);
    p.samples.push_back({q, (1.0 - f) * a.time + f * b.time});
  }
  return p;
}

Json cmd_nullmoment(const Options& o, const Scenario& sc) {
  need_names(o, 4, "four event names X0 X1 Y0 Y1");
  if (o.steps < 1) throw Error(ErrorCode::Config, "steps must be positive");
  const StaticSpacetime st = sc.spacetime();
  const SurfaceModel& m = st.surface();
  const EventPath p1 = straight_path(m, sc.event(o.names[0]), sc.event(o.names[1]), o.steps);
  const EventPath p2 = straight_path(m, sc.event(o.names[2]), sc.event(o.names[3]), o.steps);
  Json report;
  report["inputs"] = {{"path1", {o.names[0], o.names[1]}}, {"path2", {o.names[2], o.names[3]}}, {"steps", o.steps}};
  if (o.all_moments) {
    report["moments"] = null_moments_all(st, p1, p2);
  } else {
    const auto tau = null_moment_detector(st, p1, p2);
    report["tau"] = tau ? Json(*tau) : Json(nullptr);
  }
  return report;
}

int cmd_verify(const Options& o) {
  AcceptanceOptions opts;
  if (o.level == "quick")
    opts.level = VerifyLevel::Quick;
  else if (o.level == "full")
    opts.level = VerifyLevel::Full;
  else
    throw Error(ErrorCode::Config, "level must be quick or full");
  opts.seed = o.seed;
  opts.mutate_sign = o.mutate_sign;
  bool all = true;
  run_acceptance(opts, [&](const CriterionResult& r) {
    all = all && r.passed;
    std::cout << format_result(r) << std::endl;
  });
  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? kOk : kFailure;
}

void emit(const Options& o, Json report, const std::string& command, double seconds) {
  Json out;
  out["command"] = command;
  if (!o.scenario.empty()) out["scenario"] = o.scenario;
  out["seed"] = o.seed;
  for (auto& [k, v] : report.items()) out[k] = v;
  out["wall_time"] = seconds;
  const std::string text = out.dump(2) + "\n";
  if (!o.out.empty() && command != "front") {
    std::ofstream f(o.out);
    if (!f || !(f << text)) throw Error(ErrorCode::Io, "cannot write report to " + o.out);
  } else {
    std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skylink: affine linking numbers of skies in static spacetimes"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool scenario_required) {
    auto* opt = sub->add_option("--scenario", o.scenario, "scenario file (JSON)");
    if (scenario_required) opt->required();
    sub->add_option("--out", o.out, "write the report (or front files) here");
    sub->add_option("--seed", o.seed, "seed for randomized suites");
  };
  auto* alk = app.add_subcommand("alk", "affine linking number of two events");
  add_common(alk, true);
  alk->add_option("--method", o.method, "counting | intersection | homotopy | all");
  alk->add_option("--curve", o.curve, "named timelike curve for the intersection method");
  alk->add_option("names", o.names, "X Y")->expected(2);

  auto* front = app.add_subcommand("front", "export wave fronts of an event");
  add_common(front, true);
  front->add_option("--times", o.times, "comma separated cone times");
  front->add_option("--format", o.format, "csv | svg");
  front->add_option("names", o.names, "X")->expected(1);

  auto* causal = app.add_subcommand("causal", "causal relation of two events");
  add_common(causal, true);
  causal->add_option("names", o.names, "X Y")->expected(2);

  auto* sight = app.add_subcommand("sight", "sightings of x along a curve from y to z");
  add_common(sight, true);
  sight->add_option("names", o.names, "X Y Z")->expected(3);

  auto* group = app.add_subcommand("group", "coefficient group and goodness of a descriptor");
  add_common(group, true);

  auto* nullmoment = app.add_subcommand("nullmoment", "first null moment along two straight event paths");
  add_common(nullmoment, true);
  nullmoment->add_option("--steps", o.steps, "grid intervals");
  nullmoment->add_flag("--all", o.all_moments, "report every grid hit and sign change");
  nullmoment->add_option("names", o.names, "X0 X1 Y0 Y1")->expected(4);

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--level", o.level, "quick | full");
  verify->add_option("--seed", o.seed, "seed for randomized suites");
  verify->add_flag("--mutate-sign", o.mutate_sign, "flip the counting sign (must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    if (command == "verify") return cmd_verify(o);
    const Scenario sc = load_scenario(o.scenario);
    Json report;
    if (command == "alk")
      report = cmd_alk(o, sc, status);
    else if (command == "front")
      report = cmd_front(o, sc);
    else if (command == "causal")
      report = cmd_causal(o, sc);
    else if (command == "sight")
      report = cmd_sight(o, sc);
    else if (command == "group")
      report = cmd_group(sc);
    else
      report = cmd_nullmoment(o, sc);
    emit(o, report, command,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  } catch (const Error& e) {
    Json err;
    err["command"] = command;
    err["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "skylink: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "skylink: " << e.what() << "\n";
    return kNumeric;
  }
  return status;
}
