#include "preimages.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skylink/error.hpp"

namespace skylink::detail {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Seed {
  double s;
  double t;
};

double cyclic_gap(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

// Grid scan of every ray against the target.
std::vector<Seed> scan_seeds(const SurfaceModel& m, const SurfacePoint& p, double tau, const Target& target,
                             const NumericPolicy& policy, int n) {
  const int k_max = std::max(policy.t_grid, 8);
  const double h = tau / k_max;
  const double ds = kTwoPi / n;
  const auto f = m.frame(p);
  const bool sphere = m.kind() == SurfaceKind::RoundSphere;

  std::vector<SurfacePoint> targets(static_cast<std::size_t>(k_max) + 1);
  double speed = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    targets[static_cast<std::size_t>(k)] = target.point(k * h);
    speed = std::max(speed, target.velocity(k * h).norm());
  }

  std::vector<Seed> seeds;
  std::vector<double> d(static_cast<std::size_t>(k_max) + 1);
  for (int i = 0; i < n; ++i) {
    const double s = i * ds;
    const Vec3 u = std::cos(s) * f[0] + std::sin(s) * f[1];
    for (int k = 0; k <= k_max; ++k) {
      const double t = k * h;
      SurfacePoint q;
      if (sphere) {
        const double a = t / m.radius();
        q.coords = std::cos(a) * p.coords + std::sin(a) * u;
      } else {
        q.coords = p.coords + t * u;
      }
      d[static_cast<std::size_t>(k)] = m.displacement(q, targets[static_cast<std::size_t>(k)]).norm();
    }
    // k = 0 is the cone vertex, where (s, t) is not a chart.
    for (int k = 1; k <= k_max; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (d[kk] > d[kk - 1]) continue;
      if (k < k_max && d[kk] >= d[kk + 1]) continue;
      const double t = k * h;
      if (d[kk] <= 2.0 * (t * ds + h * (1.0 + speed))) seeds.push_back({s, t});
    }
  }
  return seeds;
}

}  // namespace

Target fixed_target(const SurfacePoint& v) {
  return {[v](double) { return v; }, [](double) { return Vec3(Vec3::Zero()); }};
}

std::vector<Preimage> solve_preimages(const SurfaceModel& m, const SurfacePoint& p, double tau, const Target& target,
                                      const NumericPolicy& policy, int n_rays) {
  const int n = n_rays > 0 ? n_rays : policy.n_samples;
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "preimage search needs at least 8 rays");
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "preimage search needs a positive time span");

  const double band = policy.tol_merge;
  const double tol = policy.tol_root * (1.0 + tau);
  std::vector<Preimage> roots;

  for (const Seed& seed : scan_seeds(m, p, tau, target, policy, n)) {
    double s = seed.s;
    double t = seed.t;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const RayState r = m.ray(p, s, t);
      const LocalChart chart = m.local_chart(target.point(t));
      const Vec2 res = chart.coords(r.point);
      if (res.norm() < tol) {
        converged = true;
        break;
      }
      Mat2 j;
      j.col(0) = chart.components(r.d_ds);
      j.col(1) = chart.components(r.velocity - target.velocity(t));
      if (std::abs(j.determinant()) < 1e-300) break;
      Vec2 step = j.partialPivLu().solve(-res);
      const double limit_t = std::max(tau / 8.0, 1e-6);
      if (std::abs(step[0]) > 0.5) step *= 0.5 / std::abs(step[0]);
      if (std::abs(step[1]) > limit_t) step *= limit_t / std::abs(step[1]);
      s += step[0];
      t += step[1];
    }
    if (!converged) continue;
    if (t < -band || t > tau + band) continue;
    if (std::abs(t) <= band || std::abs(t - tau) <= band) {
      std::ostringstream msg;
      msg << "preimage at s=" << wrap_angle(s) << ", t=" << t << " lies in the tolerance band of the interval (0, "
          << tau << ")";
      throw Error(ErrorCode::AmbiguousPreimage, msg.str());
    }
    s = wrap_angle(s);
    const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const Preimage& q) {
      return cyclic_gap(q.s, s) < band && std::abs(q.t - t) < band;
    });
    if (duplicate) continue;
    roots.push_back({s, t, m.ray(p, s, t), target.velocity(t)});
  }

  std::sort(roots.begin(), roots.end(), [](const Preimage& a, const Preimage& b) {
    return a.s != b.s ? a.s < b.s : a.t < b.t;
  });
  return roots;
}

}  // namespace skylink::detail
