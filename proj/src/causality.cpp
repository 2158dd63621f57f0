#include <cstdlib>

#include "skylink/alk.hpp"
#include "skylink/error.hpp"

namespace skylink {

const char* to_string(CausalityCall call) {
  switch (call) {
    case CausalityCall::Related: return "Related";
    case CausalityCall::Unrelated: return "Unrelated";
    case CausalityCall::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

ManifoldDescriptor descriptor_of(const SurfaceModel& model) {
  switch (model.kind()) {
    case SurfaceKind::FlatPlane: return ManifoldDescriptor::plane();
    case SurfaceKind::FlatTorus: return ManifoldDescriptor::torus2();
    case SurfaceKind::RoundSphere: return ManifoldDescriptor::sphere(2);
  }
  return ManifoldDescriptor::plane();
}

CausalityVerdict causality_from_alk(const StaticSpacetime& st, const ManifoldDescriptor& desc, const Event& x,
                                    const Event& y) {
  const CoefficientGroup group = coefficient_group(desc);
  CausalityVerdict out;
  out.oracle = causal_relation(st, x, y).kind;
  out.alk = alk_by_counting(st, x, y, group).value;
  if (out.alk.known_nonzero())
    out.call = CausalityCall::Related;
  else if (out.alk.known_zero() && group.kind == CoefficientGroup::Kind::Integers &&
           st.timelike_curvature_certified_nonnegative())
    out.call = CausalityCall::Unrelated;
  else
    out.call = CausalityCall::Inconclusive;
  const bool related = out.oracle != CausalKind::Unrelated;
  out.disagreement = out.alk.known_nonzero() ? !related : related;
  return out;
}

long sighting_count(const StaticSpacetime& st, const Event& x, const Event& y, const Event& z) {
  if (!(z.time > y.time) || causal_relation(st, y, z).kind != CausalKind::Chronological)
    throw Error(ErrorCode::InvalidArgument, "z must lie in the chronological future of y");
  const long a = alk_by_counting(st, x, y).value.count;
  const long b = alk_by_counting(st, x, z).value.count;
  return std::labs(b - a);
}

}  // namespace skylink
