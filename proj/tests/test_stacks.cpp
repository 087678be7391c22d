#include "hhl/stacks.hpp"

#include <gtest/gtest.h>

#include <random>

using hhl::LatticeMapInput;
using hhl::exact::int_vector;
using hhl::exact::IntMatrix;
using hhl::exact::IntVector;
using hhl::exact::operator+;

namespace {

LatticeMapInput cusp() { return LatticeMapInput::from_rows({int_vector({3}), int_vector({-2})}); }
LatticeMapInput torsion() { return LatticeMapInput::from_rows({int_vector({2, -1}), int_vector({-1, 2})}); }

hhl::HHLComplex build(const LatticeMapInput& in) { return hhl::build_affine_complex(hhl::enumerate_strata(in)); }

hhl::GSInput p1_point() {
  hhl::GSInput gs;
  gs.n_x = 1;
  gs.rays = {int_vector({1}), int_vector({-1})};
  gs.cones = {{0}, {1}};
  gs.beta = {int_vector({1})};
  return gs;
}

}  // namespace

TEST(Stacks, FanValidation) {
  const auto affine = hhl::validate_fan({0, {{0, 1}}, {}}, 2);
  EXPECT_EQ(affine.closure.size(), 4u);
  const auto punctured = hhl::validate_fan({0, {{0}, {1}}, {}}, 2);
  EXPECT_EQ(punctured.closure, (std::set<std::vector<std::size_t>>{{}, {0}, {1}}));
  EXPECT_FALSE(punctured.contains({0, 1}));
  try {
    hhl::validate_fan({0, {{2}}, {}}, 2);
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::IndexOutOfRange);
  }
}

TEST(Stacks, FanClosureIsDownwardClosed) {
  const auto f = hhl::validate_fan({0, {{0, 2, 3}, {1, 2}}, {}}, 4);
  EXPECT_TRUE(f.closure.count({}));
  for (const auto& c : f.closure)
    for (std::size_t j = 0; j < c.size(); ++j) {
      auto face = c;
      face.erase(face.begin() + static_cast<long>(j));
      EXPECT_TRUE(f.closure.count(face));
    }
}

TEST(Stacks, ThomsenBondalTorsion) {
  const auto c = hhl::enumerate_strata(torsion());
  EXPECT_EQ(c.strata.size(), 12u);
  EXPECT_EQ(hhl::thomsen_bondal_collection(c, hhl::GroupSpec::full(torsion())).size(), 3u);
  EXPECT_EQ(hhl::thomsen_bondal_collection(c, hhl::GroupSpec::trivial(2)).size(), 1u);
}

TEST(Stacks, LabelClassIndependentOfLift) {
  const auto in = torsion();
  const auto c = hhl::enumerate_strata(in);
  const auto g = hhl::GroupSpec::full(in);
  std::mt19937 rng(9);
  for (const auto& l : hhl::line_bundle_labels(c, g))
    for (int trial = 0; trial < 5; ++trial) {
      const IntVector t = int_vector({static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 9) - 4});
      EXPECT_EQ(g.classify(l.coefficients + in.matrix() * t), l.cls);
    }
}

TEST(Stacks, EquivariantDegrees) {
  const auto c = build(torsion());
  const auto full = hhl::GroupSpec::full(torsion());
  EXPECT_TRUE(hhl::equivariant_degrees_preserved(c, full));
  // Each homological position meets all three characters once.
  const auto deg = hhl::equivariant_degrees(c, full);
  for (const auto& m : c.modules) {
    std::map<hhl::DegreeLabel, int> count;
    for (const auto& g : m) ++count[deg.at(g.stratum)];
    EXPECT_EQ(count.size(), 3u);
    for (const auto& [cls, k] : count) EXPECT_EQ(static_cast<std::size_t>(k), m.size() / 3);
  }
  for (const auto& [id, l] : hhl::equivariant_degrees(c, hhl::GroupSpec::trivial(2))) EXPECT_EQ(l, hhl::DegreeLabel{});
  // An explicit Z/3 character with the same kernel.
  const auto z3 = hhl::GroupSpec::explicit_group(0, int_vector({3}), IntMatrix{{1, 2}});
  EXPECT_TRUE(hhl::equivariant_degrees_preserved(c, z3));
  EXPECT_THROW(hhl::GroupSpec::explicit_group(0, int_vector({3}), IntMatrix{{1, 1}}).validate(torsion()), hhl::Error);
}

TEST(Stacks, LocalizeChart) {
  const auto c = build(cusp());
  const auto affine = hhl::Fan::orthant(2);
  EXPECT_TRUE(hhl::localize_chart(c, hhl::validate_fan(affine, 2), {0, 1}).inverted.empty());
  const auto fan = hhl::validate_fan({0, {{0}, {1}}, {}}, 2);
  EXPECT_EQ(hhl::localize_chart(c, fan, {0}).inverted, (std::vector<std::size_t>{1}));
  EXPECT_EQ(hhl::localize_chart(c, fan, {}).inverted, (std::vector<std::size_t>{0, 1}));
  try {
    hhl::localize_chart(c, fan, {0, 1});
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::ConeNotInFan);
  }
}

TEST(Stacks, ConvertP1Point) {
  const auto conv = hhl::convert_gs_input(p1_point());
  EXPECT_EQ(conv.input.n, 2u);
  EXPECT_EQ(conv.input.k, 1u);
  EXPECT_EQ(conv.input.psi, (std::vector<IntVector>{int_vector({1}), int_vector({-1})}));
  EXPECT_EQ(conv.fan.maximal_cones, (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  EXPECT_EQ(conv.group.characters().free_rank(), 1u);
  EXPECT_TRUE(conv.group.characters().torsion().empty());

  const auto c = build(conv.input);
  EXPECT_EQ(c.strata.f_vector(), (std::vector<std::size_t>{1, 1}));
  const auto classes = hhl::thomsen_bondal_collection(c.strata, conv.group);
  EXPECT_EQ(classes, (std::vector<hhl::DegreeLabel>{{int_vector({-1}), {}}, {int_vector({0}), {}}}));
  const hhl::PolyMatrix expected{1, 1, {{{0, 0}, hhl::normalize({{1, int_vector({1, 0})}, {-1, int_vector({0, 1})}})}}};
  EXPECT_TRUE(hhl::signed_permutation_equivalent({c.d(1)}, {expected}));
}

TEST(Stacks, ConversionErrors) {
  auto full = p1_point();
  full.phi = {int_vector({1})};
  try {
    hhl::convert_gs_input(full);
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::DegenerateSubstack);
  }
  hhl::GSInput plane;
  plane.n_x = 2;
  plane.rays = {int_vector({1, 0}), int_vector({0, 1})};
  plane.cones = {{0, 1}};
  plane.beta = {int_vector({1, 0}), int_vector({0, 1})};
  plane.phi = {int_vector({2, 0})};
  try {
    hhl::convert_gs_input(plane);
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::CokernelNotFree);
  }
  plane.phi = {int_vector({1, 1}), int_vector({2, 2})};
  try {
    hhl::convert_gs_input(plane);
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::NonInjectivePhi);
  }
  // A line through the origin in the plane: coker phi = Z.
  plane.phi = {int_vector({1, 1})};
  const auto conv = hhl::convert_gs_input(plane);
  EXPECT_EQ(conv.input.k, 1u);
  EXPECT_EQ(conv.input.psi[0][0], -conv.input.psi[1][0]);
}
