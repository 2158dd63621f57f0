#include <gtest/gtest.h>

#include "skylink/coefficient_group.hpp"
#include "skylink/error.hpp"

using namespace skylink;
using Kind = CoefficientGroup::Kind;

namespace {

ErrorCode code_of(const ManifoldDescriptor& d) {
  try {
    coefficient_group(d);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;  // no error
}

TEST(Classifier, Table) {
  EXPECT_EQ(coefficient_group(ManifoldDescriptor::torus2()).kind, Kind::Integers);
  EXPECT_TRUE(is_good(ManifoldDescriptor::torus2()));
  EXPECT_EQ(coefficient_group(ManifoldDescriptor::sphere(2)).kind, Kind::Integers);
  EXPECT_FALSE(is_good(ManifoldDescriptor::sphere(2)));
  EXPECT_EQ(coefficient_group(ManifoldDescriptor::sphere(3)).kind, Kind::Trivial);
  EXPECT_TRUE(is_good(ManifoldDescriptor::sphere(3)));
  EXPECT_EQ(coefficient_group(ManifoldDescriptor::plane()).kind, Kind::Integers);
  EXPECT_TRUE(is_good(ManifoldDescriptor::plane()));
}

TEST(Classifier, EvenSpheresAreNotGoodInEveryEvenDimension) {
  for (int m : {2, 4, 6}) EXPECT_FALSE(is_good(ManifoldDescriptor::sphere(m)));
  for (int m : {3, 5, 7}) EXPECT_TRUE(is_good(ManifoldDescriptor::sphere(m)));
}

TEST(Classifier, ExceptionalCaseUsesDegreeImage) {
  ManifoldDescriptor d = ManifoldDescriptor::sphere(3);
  d.pi1_order = 4;
  d.degree_image = 8;
  EXPECT_EQ(coefficient_group(d), CoefficientGroup::mod(8));
  d.degree_image = 0;
  EXPECT_EQ(coefficient_group(d).kind, Kind::Integers);
  d.degree_image = std::nullopt;
  const CoefficientGroup g = coefficient_group(d);
  EXPECT_EQ(g.kind, Kind::UnknownQuotient);
  EXPECT_EQ(g.divisor_hint, 4);
}

TEST(Classifier, InfiniteFundamentalGroupGivesIntegers) {
  ManifoldDescriptor d = ManifoldDescriptor::sphere(3);
  d.pi1_order = std::nullopt;
  d.degree_image = 1;
  EXPECT_EQ(coefficient_group(d).kind, Kind::Integers);
}

TEST(Classifier, NotRationalHomologySphereGivesIntegers) {
  ManifoldDescriptor d = ManifoldDescriptor::sphere(3);
  d.rational_homology_sphere = false;
  EXPECT_EQ(coefficient_group(d).kind, Kind::Integers);
}

TEST(Classifier, Errors) {
  ManifoldDescriptor d = ManifoldDescriptor::torus2();
  d.orientable = false;
  EXPECT_EQ(code_of(d), ErrorCode::Unsupported);
  EXPECT_THROW(is_good(d), Error);

  d = ManifoldDescriptor::plane();
  d.degree_image = 2;
  EXPECT_EQ(code_of(d), ErrorCode::InvalidArgument);

  d = ManifoldDescriptor::sphere(3);
  d.homeo_even_sphere = true;
  EXPECT_EQ(code_of(d), ErrorCode::InvalidArgument);

  d = ManifoldDescriptor::sphere(3);
  d.pi1_order = 3;
  d.degree_image = 4;  // must be a multiple of |pi1|
  EXPECT_EQ(code_of(d), ErrorCode::InvalidArgument);

  d = ManifoldDescriptor::sphere(3);
  d.dimension = 1;
  EXPECT_EQ(code_of(d), ErrorCode::InvalidArgument);
}

TEST(Group, ModOneIsTrivial) {
  EXPECT_EQ(CoefficientGroup::mod(1).kind, Kind::Trivial);
  EXPECT_EQ(CoefficientGroup::mod(0).kind, Kind::Integers);
  EXPECT_EQ(CoefficientGroup::mod(-6), CoefficientGroup::mod(6));
}

TEST(AlkValues, ReductionAndEquality) {
  const CoefficientGroup z5 = CoefficientGroup::mod(5);
  EXPECT_EQ(AlkValue::of(16, z5).representative, 1);
  EXPECT_EQ(AlkValue::of(-3, z5).representative, 2);
  EXPECT_EQ(AlkValue::of(16, z5), AlkValue::of(1, z5));
  EXPECT_FALSE(AlkValue::of(16, CoefficientGroup::integers()) == AlkValue::of(1, CoefficientGroup::integers()));
  EXPECT_EQ(AlkValue::of(16, CoefficientGroup::integers()).representative, 16);
  EXPECT_TRUE(AlkValue::of(10, z5).known_zero());
  EXPECT_TRUE(AlkValue::of(7, CoefficientGroup::mod(1)).known_zero());
  EXPECT_FALSE(AlkValue::of(7, CoefficientGroup::unknown_quotient(7)).known_nonzero());
  EXPECT_FALSE(AlkValue::of(7, CoefficientGroup::unknown_quotient(7)).known_zero());
}

TEST(Group, Names) {
  EXPECT_EQ(CoefficientGroup::integers().to_string(), "Z");
  EXPECT_EQ(CoefficientGroup::mod(4).to_string(), "Z/4");
  EXPECT_EQ(CoefficientGroup::mod(1).to_string(), "trivial");
}

}  // namespace
