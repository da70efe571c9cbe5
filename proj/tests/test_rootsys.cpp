#include "symmwave/rootsys.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace symmwave;

namespace {

RootSystem sys(const std::string& cat, const std::string& preset = "normal") {
  return build_root_system(cat, preset_multiplicities(cat, preset));
}

}  // namespace

TEST(RootSys, WeylOrdersMatchClassicalValues) {
  EXPECT_EQ(sys("A1").weyl.order(), 2u);
  EXPECT_EQ(sys("BC1").weyl.order(), 2u);
  EXPECT_EQ(sys("A2").weyl.order(), 6u);
  EXPECT_EQ(sys("A3").weyl.order(), 24u);
  EXPECT_EQ(sys("B2").weyl.order(), 8u);
  EXPECT_EQ(sys("G2").weyl.order(), 12u);
}

TEST(RootSys, PositiveRootCounts) {
  EXPECT_EQ(sys("A2").positive_roots.size(), 3u);
  EXPECT_EQ(sys("A3").positive_roots.size(), 6u);
  EXPECT_EQ(sys("B2").positive_roots.size(), 4u);
  EXPECT_EQ(sys("G2").positive_roots.size(), 6u);
  EXPECT_EQ(sys("BC1").positive_roots.size(), 2u);
}

TEST(RootSys, ManifoldDimensionsOfKnownSpaces) {
  // SL(3,R)/SO(3) has dimension 5, SL(4,R)/SO(4) has 9, SL(3,C)/SU(3) has 8.
  EXPECT_EQ(dims(sys("A2")).d, 5);
  EXPECT_EQ(dims(sys("A3")).d, 9);
  EXPECT_EQ(dims(sys("A2", "complex")).d, 8);
  EXPECT_EQ(dims(sys("A2")).D, 8);
  EXPECT_EQ(dims(sys("G2")).d, 8);
  // H^n: d = n, D = 3.
  for (int n = 2; n <= 6; ++n) {
    const auto h = sys("A1", "hyperbolic:" + std::to_string(n));
    EXPECT_EQ(dims(h).d, n);
    EXPECT_EQ(dims(h).D, 3);
  }
}

TEST(RootSys, RhoOfA2IsTheHighestRoot) {
  const auto rs = sys("A2");
  const Vec rho = half_sum_rho(rs);
  EXPECT_NEAR((rho - rs.positive_roots[2].vec).norm(), 0.0, 1e-15);
  EXPECT_NEAR(half_sum_rho(sys("A1", "hyperbolic:3")).norm(), 1.0, 1e-15);
}

TEST(RootSys, SimpleRootsHaveNonpositiveInnerProducts) {
  for (const std::string c : {"A2", "A3", "B2", "G2"}) {
    const auto rs = sys(c);
    for (int j = 0; j < rs.rank; ++j)
      for (int k = 0; k < rs.rank; ++k)
        if (j != k) EXPECT_LE(rs.simple(j).dot(rs.simple(k)), 0.0) << c;
  }
}

TEST(RootSys, ValidateIsCleanForCatalog) {
  for (const std::string c : {"A1", "BC1", "A2", "A3", "B2", "G2"}) EXPECT_TRUE(validate(sys(c)).empty()) << c;
}

TEST(RootSys, CartanDensityAndChamber) {
  const auto rs = sys("A2");
  Vec H(2);
  H << 0.3, 0.9;
  ASSERT_TRUE(in_open_chamber(rs, H));
  double expect = 1.0;
  for (const auto& r : rs.positive_roots) expect *= std::sinh(r.vec.dot(H));
  EXPECT_NEAR(cartan_density(rs, H), expect, 1e-15);
  EXPECT_THROW(cartan_density(rs, -H), DomainError);
  // to_chamber returns the dominant element of the orbit.
  for (const auto& w : rs.weyl.elements) {
    const Vec m = to_chamber(rs, w * H);
    EXPECT_NEAR((m - H).norm(), 0.0, 1e-13);
  }
}

TEST(RootSys, MultiplicityChecks) {
  EXPECT_THROW(build_root_system("A2", {1, 2, 1}), DomainError);  // not W-invariant
  EXPECT_THROW(build_root_system("A2", {0}), DomainError);
  EXPECT_THROW(build_root_system("BC1", {2}), DomainError);
  EXPECT_THROW(preset_multiplicities("BC1", "complex"), DomainError);
  EXPECT_THROW(preset_multiplicities("A2", "hyperbolic:3"), DomainError);
  EXPECT_THROW(build_root_system("E8"), DomainError);
  // B2 allows different short and long multiplicities.
  EXPECT_NO_THROW(build_root_system("B2", {1, 2, 2, 1}));
}

TEST(RootSys, SystemFileParsing) {
  const auto rs = parse_system_file("# comment\ncatalog = B2\nmultiplicities = complex\nlabel = test-b2\n");
  EXPECT_EQ(rs.catalog, "B2");
  EXPECT_EQ(rs.label, "test-b2");
  EXPECT_TRUE(rs.is_complex_type());
  const auto bc = parse_system_file("catalog: BC1\nmultiplicities: [2, 1]\n");
  EXPECT_EQ(bc.positive_roots[0].mult, 2);
  EXPECT_EQ(bc.mult_double(bc.positive_roots[0]), 1);
  EXPECT_EQ(dims(bc).d, 4);
  const auto h = parse_system_file("catalog = A1\nmultiplicities = hyperbolic:5\n");
  EXPECT_EQ(dims(h).d, 5);
  EXPECT_THROW(parse_system_file("multiplicities = 1\n"), DomainError);
  EXPECT_THROW(parse_system_file("catalog = A2\ncolour = red\n"), DomainError);
  EXPECT_THROW(parse_system_file("catalog A2\n"), DomainError);
  EXPECT_THROW(load_system_file("/nonexistent/file.sys"), DomainError);
}
