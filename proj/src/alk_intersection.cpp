#include <algorithm>
#include <cmath>
#include <sstream>

#include "preimages.hpp"
#include "skylink/alk.hpp"
#include "skylink/error.hpp"

namespace skylink {

TimelikeCurve TimelikeCurve::vertical(const Event& end) {
  TimelikeCurve c;
  c.kind_ = Kind::Vertical;
  c.end_ = end;
  return c;
}

TimelikeCurve TimelikeCurve::tilted(const Event& end, const TangentVector& velocity) {
  TimelikeCurve c;
  c.kind_ = Kind::Tilted;
  c.end_ = end;
  c.velocity_ = velocity.components;
  return c;
}

TimelikeCurve TimelikeCurve::sampled(std::vector<Event> samples) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "sampled curve needs at least one sample");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].time > samples[i - 1].time))
      throw Error(ErrorCode::InvalidArgument, "curve sample times must increase strictly");
  TimelikeCurve c;
  c.kind_ = Kind::Sampled;
  c.end_ = samples.back();
  c.samples_ = std::move(samples);
  return c;
}

namespace {

struct Segment {
  std::size_t index;
  double f;
};

Segment locate(const std::vector<Event>& samples, double time) {
  const auto it = std::upper_bound(samples.begin(), samples.end(), time,
                                   [](double t, const Event& e) { return t < e.time; });
  const std::size_t i = static_cast<std::size_t>(it - samples.begin()) - 1;
  return {i, (time - samples[i].time) / (samples[i + 1].time - samples[i].time)};
}

}  // namespace

SurfacePoint TimelikeCurve::point_at(const SurfaceModel& m, double time) const {
  switch (kind_) {
    case Kind::Vertical: return end_.point;
    case Kind::Tilted: {
      const double speed = velocity_.norm();
      const double dt = time - end_.time;
      if (speed == 0.0 || dt == 0.0) return end_.point;
      const Vec3 dir = (dt > 0.0 ? 1.0 : -1.0) * velocity_ / speed;
      const double len = std::abs(dt) * speed;
      return m.integrate_geodesic(end_.point, {end_.point, dir}, len, len).first;
    }
    case Kind::Sampled: {
      if (time <= samples_.front().time) return samples_.front().point;
      if (time >= samples_.back().time) return samples_.back().point;
      const auto [i, f] = locate(samples_, time);
      const SurfacePoint& a = samples_[i].point;
      const SurfacePoint& b = samples_[i + 1].point;
      if (m.kind() != SurfaceKind::RoundSphere) return m.normalize({a.coords + f * m.displacement(a, b)});
      const double w = std::acos(std::clamp(a.coords.dot(b.coords), -1.0, 1.0));
      if (w < 1e-15) return a;
      return SurfacePoint::embedded(
          ((std::sin((1.0 - f) * w) * a.coords + std::sin(f * w) * b.coords) / std::sin(w)).normalized());
    }
  }
  return end_.point;
}

Vec3 TimelikeCurve::velocity_at(const SurfaceModel& m, double time) const {
  switch (kind_) {
    case Kind::Vertical: return Vec3::Zero();
    case Kind::Tilted: {
      const double speed = velocity_.norm();
      const double dt = time - end_.time;
      if (speed == 0.0) return Vec3::Zero();
      if (dt == 0.0) return velocity_;
      const Vec3 dir = (dt > 0.0 ? 1.0 : -1.0) * velocity_ / speed;
      const double len = std::abs(dt) * speed;
      const Vec3 v = m.integrate_geodesic(end_.point, {end_.point, dir}, len, len).second.components;
      return (dt > 0.0 ? speed : -speed) * v;
    }
    case Kind::Sampled: {
      if (time <= samples_.front().time || time > samples_.back().time) return Vec3::Zero();
      const auto [i, f] = locate(samples_, time);
      const SurfacePoint& a = samples_[i].point;
      const SurfacePoint& b = samples_[i + 1].point;
      const double span = samples_[i + 1].time - samples_[i].time;
      if (m.kind() != SurfaceKind::RoundSphere) return m.displacement(a, b) / span;
      const double w = std::acos(std::clamp(a.coords.dot(b.coords), -1.0, 1.0));
      if (w < 1e-15) return Vec3::Zero();
      const Vec3 dp = w * (-std::cos((1.0 - f) * w) * a.coords + std::cos(f * w) * b.coords) / std::sin(w);
      return m.radius() * dp / span;
    }
  }
  return Vec3::Zero();
}

double TimelikeCurve::max_speed(const SurfaceModel& m) const {
  switch (kind_) {
    case Kind::Vertical: return 0.0;
    case Kind::Tilted: return velocity_.norm();
    case Kind::Sampled: {
      double best = 0.0;
      for (std::size_t i = 0; i + 1 < samples_.size(); ++i)
        best = std::max(best, m.distance(samples_[i].point, samples_[i + 1].point) /
                                  (samples_[i + 1].time - samples_[i].time));
      return best;
    }
  }
  return 0.0;
}

AlkResult alk_by_intersection(const StaticSpacetime& st, const Event& x, const Event& y, const TimelikeCurve& gamma,
                              const CoefficientGroup& group, int n_rays) {
  const SurfaceModel& m = st.surface();
  const NumericPolicy& policy = st.policy();
  m.validate(x.point, policy.tol_unit);
  m.validate(y.point, policy.tol_unit);
  if (gamma.end().time != y.time || m.distance(gamma.end().point, y.point) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "curve does not end at y");

  const CausalVerdict verdict = causal_relation(st, x, y);
  if (verdict.identical) throw Error(ErrorCode::CommonNullGeodesic, "identical events share every null geodesic");
  if (verdict.kind == CausalKind::Null)
    throw Error(ErrorCode::CommonNullGeodesic, "y lies on the null cone of x");

  AlkResult out;
  out.target = y.point;
  const double tau = y.time - x.time;
  if (tau <= 0.0) {
    if (verdict.kind == CausalKind::Unrelated) {
      out.value = AlkValue::of(0, group);
      return out;
    }
    throw Error(ErrorCode::InvalidArgument, "the intersection count needs y in the causal future of x");
  }
  if (!(gamma.max_speed(m) < 1.0)) throw Error(ErrorCode::InvalidArgument, "curve is not timelike");
  if (m.distance(gamma.point_at(m, x.time), x.point) < policy.tol_merge)
    throw Error(ErrorCode::InvalidArgument, "curve passes through x");

  detail::Target target{[&](double t) { return gamma.point_at(m, x.time + t); },
                        [&](double t) { return gamma.velocity_at(m, x.time + t); }};
  const auto roots = detail::solve_preimages(m, x.point, tau, target, policy, n_rays);
  long count = 0;
  for (const auto& r : roots) {
    const LocalChart chart = m.local_chart(r.state.point);
    Mat3 frame;
    frame.col(0) << chart.components(r.state.velocity), 1.0;
    frame.col(1) << chart.components(r.state.d_ds), 0.0;
    frame.col(2) << chart.components(r.target_velocity), 1.0;
    const double det = frame.determinant();
    const double scale = frame.col(0).norm() * frame.col(1).norm() * frame.col(2).norm();
    if (!(std::abs(det) >= policy.tol_frame * scale)) {
      std::ostringstream msg;
      msg << "curve meets the cone tangentially at t=" << x.time + r.t << " (det=" << det << ")";
      throw Error(ErrorCode::NonGenericCurve, msg.str());
    }
    const int sign = det > 0.0 ? +1 : -1;
    count += sign;
    out.crossings.push_back({x.time + r.t, r.s, r.state.point, sign, CrossingMethod::FrameDeterminant});
  }
  out.value = AlkValue::of(count, group);
  return out;
}

}  // namespace skylink
