#pragma once

#include <optional>
#include <string>

namespace skylink {

// Topological data of the Cauchy surface that decides where alk lives.
struct ManifoldDescriptor {
  int dimension = 2;
  bool closed = false;
  bool orientable = true;
  bool rational_homology_sphere = false;
  std::optional<long> pi1_order;     // nullopt: infinite fundamental group
  std::optional<long> degree_image;  // d with Im(deg) = dZ; nullopt: unknown
  bool homeo_even_sphere = false;

  static ManifoldDescriptor torus2();
  static ManifoldDescriptor sphere(int dimension);
  static ManifoldDescriptor plane();
};

struct CoefficientGroup {
  enum class Kind { Integers, ModN, Trivial, UnknownQuotient };

  Kind kind = Kind::Integers;
  long modulus = 0;       // n for ModN
  long divisor_hint = 0;  // UnknownQuotient: the (unknown) n is a multiple of this

  static CoefficientGroup integers() { return {}; }
  static CoefficientGroup mod(long n);  // mod(1) is Trivial, mod(0) is Integers
  static CoefficientGroup unknown_quotient(long divisor_hint) { return {Kind::UnknownQuotient, 0, divisor_hint}; }

  std::string to_string() const;
  friend bool operator==(const CoefficientGroup&, const CoefficientGroup&) = default;
};

// An element of A(M): the image q(k) of an integer crossing count.
struct AlkValue {
  long count = 0;           // signed crossing count in Z before the quotient
  long representative = 0;  // reduced to [0, n) for ModN, 0 for Trivial
  CoefficientGroup group;

  static AlkValue of(long count, const CoefficientGroup& group);

  // Definitely nonzero in A(M). Unknown quotients never certify nonzero.
  bool known_nonzero() const;
  bool known_zero() const;
  std::string to_string() const;

  friend bool operator==(const AlkValue& a, const AlkValue& b) {
    return a.group == b.group && a.representative == b.representative;
  }
};

// Throws Unsupported for non-orientable M and InvalidArgument for
// inconsistent descriptors.
CoefficientGroup coefficient_group(const ManifoldDescriptor& desc);

// False exactly for manifolds homeomorphic to an even-dimensional sphere,
// where positive and negative fibers are freely homotopic.
bool is_good(const ManifoldDescriptor& desc);

}  // namespace skylink
