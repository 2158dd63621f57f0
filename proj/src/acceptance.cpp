#include "skylink/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "skylink/alk.hpp"
#include "skylink/error.hpp"

namespace skylink {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Context {
  VerifyLevel level;
  std::mt19937_64 rng;
  NumericPolicy policy;

  bool full() const { return level == VerifyLevel::Full; }
  int count(int full_n, int quick_n) const { return full() ? full_n : quick_n; }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int coin() { return uniform(0.0, 1.0) < 0.5 ? -1 : +1; }
};

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (passed) detail << "first failure: " << why << "; ";
    passed = false;
  }
};

// Independent oracle: lattice vectors with |d + lambda| < dt on the unit
// torus, and the gap of dt to the nearest lattice length.
long lattice_count(double dx, double dy, double dt, double* gap = nullptr) {
  const int r = static_cast<int>(std::ceil(dt)) + 2;
  long n = 0;
  double best = 1e300;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b) {
      const double len = std::hypot(dx + a, dy + b);
      if (len < dt) ++n;
      best = std::min(best, std::abs(len - dt));
    }
  if (gap) *gap = best;
  return n;
}

StaticSpacetime torus(const Context& ctx) { return StaticSpacetime(SurfaceModel::flat_torus(1.0, 1.0), ctx.policy); }
StaticSpacetime plane(const Context& ctx) { return StaticSpacetime(SurfaceModel::flat_plane(), ctx.policy); }

long counting(const StaticSpacetime& st, const Event& x, const Event& y) {
  return alk_by_counting(st, x, y).value.count;
}

void criterion1(Context& ctx, Outcome& out) {
  const StaticSpacetime st = torus(ctx);
  struct Fixed {
    double qx, qy, dt;
    long expected;
  };
  for (const Fixed& f : {Fixed{0.5, 0.0, 2.2, 16}, Fixed{0.1, 0.1, 1.0, 3}}) {
    const long oracle = lattice_count(f.qx, f.qy, f.dt);
    const long alk = counting(st, st.event(0, 0, 0), st.event(f.qx, f.qy, f.dt));
    if (oracle != f.expected || alk != f.expected) {
      std::ostringstream m;
      m << "fixed case dt=" << f.dt << " alk " << alk << " oracle " << oracle << " expected " << f.expected;
      out.fail(m.str());
    }
  }
  const int n = ctx.count(50, 10);
  int done = 0;
  while (done < n) {
    const double px = ctx.uniform(0, 1), py = ctx.uniform(0, 1), qx = ctx.uniform(0, 1), qy = ctx.uniform(0, 1);
    const double dt = ctx.uniform(1e-3, 3.0);
    double gap = 0.0;
    const long oracle = lattice_count(qx - px, qy - py, dt, &gap);
    if (gap < 1e-3) continue;
    const long alk = counting(st, st.event(px, py, 0.0), st.event(qx, qy, dt));
    if (alk != oracle) {
      std::ostringstream m;
      m << "p=(" << px << "," << py << ") q=(" << qx << "," << qy << ") dt=" << dt << " alk " << alk << " oracle "
        << oracle;
      out.fail(m.str());
    }
    ++done;
  }
  out.detail << "fixed cases 16 and 3 plus " << n << " random pairs";
}

void criterion2(Context& ctx, Outcome& out) {
  const int n = ctx.count(500, 60);
  int exceptions = 0;
  for (int which = 0; which < 2; ++which) {
    const StaticSpacetime st = which == 0 ? plane(ctx) : torus(ctx);
    const double box = which == 0 ? 1.5 : 1.0;
    int done = 0;
    while (done < n) {
      const Event x = st.event(ctx.uniform(-box, box), ctx.uniform(-box, box), ctx.uniform(0.0, 2.5));
      const Event y = st.event(ctx.uniform(-box, box), ctx.uniform(-box, box), ctx.uniform(0.0, 2.5));
      const double dt = std::abs(y.time - x.time);
      double gap = 0.0;
      if (which == 0) {
        gap = std::abs(st.surface().distance(x.point, y.point) - dt);
      } else {
        const Vec3 d = st.surface().displacement(x.point, y.point);
        lattice_count(d[0], d[1], dt, &gap);
      }
      if (gap < 1e-3) continue;
      const bool related = causal_relation(st, x, y).related();
      const bool linked = counting(st, x, y) != 0;
      if (related != linked) {
        ++exceptions;
        out.fail(std::string(which == 0 ? "plane" : "torus") + " pair with related=" + (related ? "yes" : "no"));
      }
      ++done;
    }
  }
  out.detail << n << " plane + " << n << " torus pairs, " << exceptions << " exceptions";
}

void criterion3(Context& ctx, Outcome& out) {
  const int n = ctx.count(100, 20);
  int retries = 0, tilted = 0;
  for (int k = 0; k < n; ++k) {
    const StaticSpacetime st = k % 2 == 0 ? plane(ctx) : torus(ctx);
    const SurfaceModel& m = st.surface();
    Event x, y;
    for (;;) {
      const double dt = ctx.uniform(0.2, 3.0);
      x = st.event(ctx.uniform(0, 1), ctx.uniform(0, 1), ctx.uniform(0, 1));
      if (m.kind() == SurfaceKind::FlatPlane) {
        const double r = dt * ctx.uniform(0.0, 0.98), a = ctx.uniform(0, 2 * kPi);
        y = st.event(x.point.x() + r * std::cos(a), x.point.y() + r * std::sin(a), x.time + dt);
      } else {
        y = st.event(ctx.uniform(0, 1), ctx.uniform(0, 1), x.time + dt);
      }
      const Vec3 d = m.displacement(x.point, y.point);
      double gap = 0.0;
      if (m.kind() == SurfaceKind::FlatPlane)
        gap = std::abs(d.norm() - dt);
      else
        lattice_count(d[0], d[1], dt, &gap);
      if (gap >= 1e-3 && causal_relation(st, x, y).related()) break;
    }
    const long by_count = counting(st, x, y);
    bool ok = false;
    for (int attempt = 0; attempt < 6 && !ok; ++attempt) {
      TimelikeCurve gamma = TimelikeCurve::vertical(y);
      if (k % 4 >= 2 || attempt > 0) {
        const double speed = ctx.uniform(0.1, 0.8), a = ctx.uniform(0, 2 * kPi);
        gamma = TimelikeCurve::tilted(y, {y.point, Vec3(speed * std::cos(a), speed * std::sin(a), 0.0)});
        if (attempt == 0) ++tilted;
      }
      try {
        const long by_curve = alk_by_intersection(st, x, y, gamma).value.count;
        ok = true;
        if (by_curve != by_count) {
          std::ostringstream msg;
          msg << st.surface().name() << " pair: intersection " << by_curve << " counting " << by_count;
          out.fail(msg.str());
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonGenericCurve && e.code() != ErrorCode::InvalidArgument) throw;
        ++retries;
      }
    }
    if (!ok) out.fail("no generic curve found after 6 attempts");
  }
  out.detail << n << " related pairs (" << tilted << " tilted curves), " << retries << " curve perturbations";
}

Front graph_front(const Vec3& p, const Vec3& e1, const Vec3& e2, double c, int dir) {
  std::vector<SurfacePoint> pts;
  std::vector<Vec3> normals;
  for (int k = 0; k <= 100; ++k) {
    const double x1 = dir * (k - 50) * 0.004;
    pts.push_back(SurfacePoint{p + x1 * e1 + c * x1 * x1 * e2});
    normals.push_back((2.0 * c * x1 * e1 - e2).normalized());
  }
  return Front::from_curve(SurfaceModel::flat_plane(), 0.0, pts, normals);
}

// Tangent of the Legendrian lift (x, y, theta) at sample 50 by central differences.
Vec3 lift_tangent(const Front& f) {
  const auto& s = f.samples();
  auto theta = [&](int k) {
    const Vec3& n = s[static_cast<std::size_t>(k)].conormal.components;
    return std::atan2(n[1], n[0]);
  };
  const Vec3 dp = s[51].point.coords - s[49].point.coords;
  const double dth = std::remainder(theta(51) - theta(49), 2 * kPi);
  return Vec3(dp[0], dp[1], dth) / 2.0;
}

void criterion4(Context& ctx, Outcome& out) {
  const int n = 200;
  int agree = 0;
  for (int k = 0; k < n; ++k) {
    const double phi = ctx.uniform(0, 2 * kPi);
    const Vec3 nrm(std::cos(phi), std::sin(phi), 0.0);
    const Vec3 e2 = -nrm;
    const Vec3 e1(e2[1], -e2[0], 0.0);
    const Vec3 p(ctx.uniform(-1, 1), ctx.uniform(-1, 1), 0.0);
    double c1 = 0.0, c2 = 0.0;
    do {
      c1 = ctx.coin() * ctx.uniform(0.3, 3.0);
      c2 = ctx.coin() * ctx.uniform(0.3, 3.0);
    } while (std::abs(c2 - c1) < 0.2);
    const int dir_a = ctx.coin(), dir_b = ctx.coin(), alpha = ctx.coin();
    const Front a = graph_front(p, e1, e2, c1, dir_a);
    const Front b = graph_front(p, e1, e2, c2, dir_b);
    const Tangency tg = make_tangency(a, 50, b, 50, SurfacePoint{p}, nrm);
    const int formula = tangency_sign(tg, tg.epsilon, alpha);
    const Vec3 v = alpha * ctx.uniform(0.2, 2.0) * nrm + ctx.uniform(-2.0, 2.0) * e1;
    const Vec3 w(-v[0], -v[1], 0.0);
    const int frame = crossing_sign_frame(lift_tangent(a), w, lift_tangent(b));
    if (tg.epsilon != dir_a * dir_b) out.fail("epsilon does not match the branch orientations");
    if (formula == frame)
      ++agree;
    else
      out.fail("scene " + std::to_string(k) + ": formula " + std::to_string(formula) + " frame " +
               std::to_string(frame));
  }
  // Two branches with det Hess g > 0 and alpha = -1.
  Tangency fig;
  fig.f1 = {0.0, 0.0, 0.0};
  fig.f2 = {0.0, 0.0, 0.5};
  for (int eps : {+1, -1})
    if (tangency_sign(fig, eps, -1) != -eps) out.fail("example configuration does not give -epsilon");
  out.detail << agree << "/" << n << " scenes agree; example configuration gives -epsilon";
}

void criterion5(Context& ctx, Outcome& out) {
  NumericPolicy policy = ctx.policy;
  policy.geodesic = GeodesicMethod::RungeKutta4;
  policy.rk4_step = 1e-3;
  const StaticSpacetime st(SurfaceModel::round_sphere(1.0), policy);
  const Event x = st.event(0.3, 0.2, 0.0);
  const SurfacePoint anti = SurfacePoint::embedded(-x.point.coords);
  const Event y{anti, 2 * kPi};

  if (!causal_relation(st, x, y).related()) out.fail("pair is not reported as related");
  const long alk = counting(st, x, y);
  if (alk != 0) out.fail("alk is " + std::to_string(alk));
  const CausalityVerdict verdict = causality_from_alk(st, descriptor_of(st.surface()), x, y);
  if (verdict.call != CausalityCall::Inconclusive) out.fail(std::string("verdict is ") + to_string(verdict.call));
  if (!verdict.disagreement) out.fail("oracle disagreement not flagged");

  double worst = 0.0;
  for (const auto& [t, expect] : {std::pair{kPi, anti}, std::pair{2 * kPi, x.point}}) {
    const Front f = propagate_front(st, x, t, 256);
    const double spread = front_spread(f);
    worst = std::max(worst, spread);
    const auto focus = refocus_detect(f, policy.tol_refocus);
    if (!focus || st.surface().distance(*focus, expect) > 1e-3 || !(spread < 1e-3))
      out.fail("no refocus at t=" + std::to_string(t));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "alk %ld, verdict %s, refocus at pi and 2pi (max spread %.2e)", alk,
                to_string(verdict.call), worst);
  out.detail << buf;
}

void criterion6(Context&, Outcome& out) {
  using K = CoefficientGroup::Kind;
  struct Row {
    const char* name;
    ManifoldDescriptor d;
    K group;
    bool good;
  };
  ManifoldDescriptor open_plane = ManifoldDescriptor::plane();
  ManifoldDescriptor open_s3 = ManifoldDescriptor::sphere(3);
  open_s3.closed = false;
  open_s3.degree_image = 0;
  const Row rows[] = {{"T2", ManifoldDescriptor::torus2(), K::Integers, true},
                      {"S2", ManifoldDescriptor::sphere(2), K::Integers, false},
                      {"S3", ManifoldDescriptor::sphere(3), K::Trivial, true},
                      {"R2", open_plane, K::Integers, true},
                      {"open 3-manifold", open_s3, K::Integers, true}};
  for (const Row& r : rows) {
    const CoefficientGroup g = coefficient_group(r.d);
    const bool good = is_good(r.d);
    if (g.kind != r.group || good != r.good)
      out.fail(std::string(r.name) + " gives " + g.to_string() + (good ? ", good" : ", not good"));
  }
  out.detail << "T2 (Z, good), S2 (Z, not good), S3 (trivial, good), non-closed (Z, good)";
}

void criterion7(Context& ctx, Outcome& out) {
  const StaticSpacetime models[] = {plane(ctx), torus(ctx),
                                    StaticSpacetime(SurfaceModel::round_sphere(1.0), ctx.policy)};
  auto random_event = [&](const StaticSpacetime& st, double t0, double t1) {
    if (st.surface().kind() == SurfaceKind::RoundSphere)
      return st.event(std::asin(ctx.uniform(-1, 1)), ctx.uniform(-kPi, kPi), ctx.uniform(t0, t1));
    return st.event(ctx.uniform(-1, 1), ctx.uniform(-1, 1), ctx.uniform(t0, t1));
  };
  auto non_null = [&](const StaticSpacetime& st, const Event& x, const Event& y) {
    const double dt = std::abs(y.time - x.time);
    for (const auto& c : st.surface().geodesic_connections(x.point, y.point, dt + 1e-3))
      if (std::abs(c.length - dt) < 1e-3) return false;
    for (const auto& f : st.surface().focal_points(x.point))
      if (st.surface().distance(f, y.point) < 1e-3) return false;
    return true;
  };

  const int n = ctx.count(30, 9);
  int slices = 0, symmetric = 0, normal = 0, coherent = 0;
  for (int k = 0; k < n; ++k) {
    const StaticSpacetime& st = models[k % 3];
    Event x, y;
    do {
      x = random_event(st, 0.0, 3.0);
      y = random_event(st, 0.0, 3.0);
    } while (!non_null(st, x, y));
    const double c = ctx.uniform(-5.0, 5.0);
    const long a = counting(st, x, y);
    if (counting(st, StaticSpacetime::translate(x, c), StaticSpacetime::translate(y, c)) != a)
      out.fail("time translation changes alk on the " + st.surface().name());
    else
      ++slices;
    if (counting(st, y, x) != a)
      out.fail("alk(x,y) != alk(y,x) on the " + st.surface().name());
    else
      ++symmetric;

    Event u = random_event(st, 0.0, 3.0);
    Event v = random_event(st, 0.0, 3.0);
    v.time = u.time;
    if (st.surface().distance(u.point, v.point) > 1e-6) {
      if (counting(st, u, v) != 0)
        out.fail("same-slice events have nonzero alk");
      else
        ++normal;
    }

    if (st.surface().is_flat()) {
      const auto res = alk_by_counting(st, x, y);
      bool same = true;
      for (const auto& cr : res.crossings) same = same && cr.sign == res.crossings.front().sign;
      if (!same)
        out.fail("mixed preimage signs in one run");
      else
        ++coherent;
    }
  }

  double legendre = 0.0, norm_err = 0.0, path_err = 0.0;
  for (const StaticSpacetime& st : models) {
    for (int k = 0; k < 3; ++k) {
      const Front f = propagate_front(st, random_event(st, 0.0, 1.0), ctx.uniform(0.1, 3.0), 256);
      legendre = std::max(legendre, f.legendrian_defect());
    }
  }
  const SurfaceModel sphere = SurfaceModel::round_sphere(1.3);
  for (int k = 0; k < 5; ++k) {
    const SurfacePoint p = sphere.point(std::asin(ctx.uniform(-1, 1)), ctx.uniform(-kPi, kPi));
    const TangentVector u = sphere.direction(p, ctx.uniform(0, 2 * kPi));
    const double len = ctx.uniform(0.5, 8.0);
    const auto rk = sphere.integrate_geodesic_rk4(p, u, len, 1e-3);
    const auto exact = sphere.integrate_geodesic(p, u, len, len);
    norm_err = std::max(norm_err, std::abs(sphere.norm(rk.second) - 1.0));
    path_err = std::max(path_err, sphere.distance(rk.first, exact.first));
  }
  if (!(legendre < 1e-6)) out.fail("Legendrian defect " + std::to_string(legendre));
  if (!(norm_err < 1e-8) || !(path_err < 1e-8)) out.fail("geodesic norm not conserved");

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "slice %d, symmetry %d, normalization %d, sign coherence %d; Legendrian %.1e, norm drift %.1e",
                slices, symmetric, normal, coherent, legendre, norm_err);
  out.detail << buf;
}

EventPath linear_path(const SurfaceModel& m, const Event& a, const Event& b, int n) {
  EventPath path;
  for (int i = 0; i <= n; ++i) {
    const double f = static_cast<double>(i) / n;
    path.params.push_back(f);
    path.samples.push_back(
        {m.normalize({(1.0 - f) * a.point.coords + f * b.point.coords}), (1.0 - f) * a.time + f * b.time});
  }
  return path;
}

void criterion8(Context& ctx, Outcome& out) {
  const StaticSpacetime st = torus(ctx);
  const SurfaceModel& m = st.surface();
  const int n = ctx.count(50, 15);
  const int grid = 64;
  int found = 0, false_positive = 0;
  for (int k = 0; k < n; ++k) {
    const Event x = st.event(ctx.uniform(0, 1), ctx.uniform(0, 1), 0.0);
    Event y0, y1;
    do {
      y0 = st.event(ctx.uniform(0, 1), ctx.uniform(0, 1), 0.0);
    } while (m.distance(x.point, y0.point) < 0.25);
    y0.time = ctx.uniform(0.0, 0.8) * m.distance(x.point, y0.point);
    y1 = st.event(ctx.uniform(0, 1), ctx.uniform(0, 1), 0.0);
    y1.time = m.distance(x.point, y1.point) + ctx.uniform(0.05, 1.0);
    // Unwrapped chart path from y0 to y1.
    y1.point.coords = y0.point.coords + m.displacement(y0.point, y1.point);
    const EventPath p1 = linear_path(m, x, x, grid);
    const EventPath p2 = linear_path(m, y0, y1, grid);
    const auto tau = null_moment_detector(st, p1, p2);
    bool null_there = false;
    if (tau) {
      const Event e = p2.at(m, *tau);
      const double gap = e.time - x.time;
      for (const auto& c : m.geodesic_connections(x.point, e.point, std::abs(gap) + 1e-6))
        null_there = null_there || std::abs(c.length - std::abs(gap)) < 1e-6;
    }
    if (tau && null_there)
      ++found;
    else
      out.fail("missed null moment in related-endpoint pair " + std::to_string(k));
  }
  for (int k = 0; k < n; ++k) {
    const Event a0 = st.event(ctx.uniform(0, 1), ctx.uniform(0, 1), ctx.uniform(0, 1));
    Event a1 = st.event(ctx.uniform(0, 1), ctx.uniform(0, 1), ctx.uniform(0, 1));
    const double r = ctx.uniform(0.3, 0.45), ang = ctx.uniform(0, 2 * kPi);
    const Vec3 offset(r * std::cos(ang), r * std::sin(ang), 0.0);
    Event b0{SurfacePoint{a0.point.coords + offset}, a0.time + ctx.uniform(-0.2, 0.2)};
    Event b1{SurfacePoint{a1.point.coords + offset}, a1.time + ctx.uniform(-0.2, 0.2)};
    if (null_moment_detector(st, linear_path(m, a0, a1, grid), linear_path(m, b0, b1, grid))) {
      ++false_positive;
      out.fail("false positive in unrelated pair " + std::to_string(k));
    }
  }
  out.detail << found << "/" << n << " null moments found, " << false_positive << "/" << n << " false positives";
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %d %s", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str());
  char tail[32];
  std::snprintf(tail, sizeof tail, " (%.1f s)", r.seconds);
  return std::string(head) + ": " + r.detail + tail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  struct Entry {
    const char* title;
    void (*run)(Context&, Outcome&);
  };
  const Entry entries[] = {
      {"torus lattice-count law", criterion1},
      {"alk detects causality on flat models", criterion2},
      {"intersection index equals preimage count", criterion3},
      {"tangency formula equals frame sign", criterion4},
      {"Einstein cylinder counterexample", criterion5},
      {"coefficient group classifier", criterion6},
      {"invariance suite", criterion7},
      {"null moment detector", criterion8},
  };
  std::vector<CriterionResult> results;
  int id = 0;
  for (const Entry& e : entries) {
    ++id;
    Context ctx{options.level, std::mt19937_64(options.seed + 1000003ULL * static_cast<std::uint64_t>(id)), {}};
    ctx.policy.flip_counting_sign = options.mutate_sign;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(ctx, out);
    } catch (const std::exception& ex) {
      out.fail(std::string("exception: ") + ex.what());
    }
    CriterionResult r{id, e.title, out.passed, out.detail.str(),
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace skylink
