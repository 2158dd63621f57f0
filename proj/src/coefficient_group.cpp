#include "skylink/coefficient_group.hpp"

#include "skylink/error.hpp"

namespace skylink {

ManifoldDescriptor ManifoldDescriptor::torus2() {
  ManifoldDescriptor d;
  d.dimension = 2;
  d.closed = true;
  d.rational_homology_sphere = false;
  d.pi1_order = std::nullopt;
  d.degree_image = 0;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::sphere(int dimension) {
  ManifoldDescriptor d;
  d.dimension = dimension;
  d.closed = true;
  d.rational_homology_sphere = true;
  d.pi1_order = 1;
  d.degree_image = 1;
  d.homeo_even_sphere = dimension % 2 == 0;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::plane() {
  ManifoldDescriptor d;
  d.dimension = 2;
  d.closed = false;
  d.pi1_order = 1;
  d.degree_image = 0;
  return d;
}

CoefficientGroup CoefficientGroup::mod(long n) {
  if (n < 0) n = -n;
  if (n == 0) return integers();
  if (n == 1) return {Kind::Trivial, 1, 0};
  return {Kind::ModN, n, 0};
}

std::string CoefficientGroup::to_string() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::ModN: return "Z/" + std::to_string(modulus);
    case Kind::Trivial: return "trivial";
    case Kind::UnknownQuotient: return "Z/n with " + std::to_string(divisor_hint) + " | n (n unknown)";
  }
  return "?";
}

AlkValue AlkValue::of(long count, const CoefficientGroup& group) {
  AlkValue v;
  v.count = count;
  v.group = group;
  switch (group.kind) {
    case CoefficientGroup::Kind::Integers:
    case CoefficientGroup::Kind::UnknownQuotient: v.representative = count; break;
    case CoefficientGroup::Kind::ModN: v.representative = ((count % group.modulus) + group.modulus) % group.modulus; break;
    case CoefficientGroup::Kind::Trivial: v.representative = 0; break;
  }
  return v;
}

bool AlkValue::known_nonzero() const {
  switch (group.kind) {
    case CoefficientGroup::Kind::Integers:
    case CoefficientGroup::Kind::ModN: return representative != 0;
    default: return false;
  }
}

bool AlkValue::known_zero() const {
  return group.kind == CoefficientGroup::Kind::Trivial || representative == 0;
}

std::string AlkValue::to_string() const {
  if (group.kind == CoefficientGroup::Kind::Integers) return std::to_string(representative);
  return std::to_string(representative) + " in " + group.to_string();
}

namespace {

void check_descriptor(const ManifoldDescriptor& d) {
  if (!d.orientable) throw Error(ErrorCode::Unsupported, "non-orientable Cauchy surfaces are not supported");
  if (d.dimension < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
  if (!d.closed && d.degree_image && *d.degree_image != 0)
    throw Error(ErrorCode::InvalidArgument, "the degree homomorphism vanishes on non-closed manifolds");
  if (d.homeo_even_sphere && (d.dimension % 2 != 0 || !d.closed || !d.rational_homology_sphere))
    throw Error(ErrorCode::InvalidArgument, "an even-dimensional sphere must be closed, even-dimensional and a QHS");
  if (d.pi1_order && *d.pi1_order <= 0) throw Error(ErrorCode::InvalidArgument, "pi1 order must be positive");
  if (d.degree_image && *d.degree_image < 0) throw Error(ErrorCode::InvalidArgument, "degree image generator must be >= 0");
}

}  // namespace

CoefficientGroup coefficient_group(const ManifoldDescriptor& desc) {
  check_descriptor(desc);
  const bool exceptional =
      desc.closed && desc.dimension % 2 == 1 && desc.rational_homology_sphere && desc.pi1_order.has_value();
  if (!exceptional) return CoefficientGroup::integers();
  const long k = *desc.pi1_order;
  if (!desc.degree_image) return CoefficientGroup::unknown_quotient(k);
  const long d = *desc.degree_image;
  // Every S^m -> M factors through the k-sheeted universal cover.
  if (d != 0 && d % k != 0)
    throw Error(ErrorCode::InvalidArgument, "degree image must be a multiple of the order of pi1");
  return CoefficientGroup::mod(d);
}

bool is_good(const ManifoldDescriptor& desc) {
  check_descriptor(desc);
  return !desc.homeo_even_sphere;
}

}  // namespace skylink
