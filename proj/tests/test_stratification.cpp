#include "hhl/stratification.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using hhl::LatticeMapInput;
using hhl::exact::Rational;
using hhl::exact::int_vector;

namespace {

LatticeMapInput cusp() { return LatticeMapInput::from_rows({int_vector({3}), int_vector({-2})}); }
LatticeMapInput torsion() { return LatticeMapInput::from_rows({int_vector({2, -1}), int_vector({-1, 2})}); }
LatticeMapInput circle() { return LatticeMapInput::from_rows({int_vector({1})}); }

Rational frac(const Rational& q) { return q - Rational(hhl::exact::floor(q)); }

// Independent count for k = 1: the torus points hit by some H_i are the
// distinct j / |p_i| in [0, 1).
std::size_t circle_points(const std::vector<long>& p) {
  std::set<Rational> pts;
  for (long a : p)
    for (long j = 0; j < std::abs(a); ++j) pts.insert(Rational(j, std::abs(a)));
  return pts.size();
}

}  // namespace

TEST(Stratification, ValidateInput) {
  EXPECT_NO_THROW(hhl::validate_input(cusp()));
  EXPECT_NO_THROW(hhl::validate_input(torsion()));
  try {
    hhl::validate_input(LatticeMapInput::from_rows({int_vector({0})}));
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::CokernelNotFinite);
    EXPECT_STREQ(e.what(), "cokernel not finite");
  }
  EXPECT_THROW(hhl::validate_input(LatticeMapInput::from_rows({int_vector({1, 2}), int_vector({2, 4})})), hhl::Error);
}

TEST(Stratification, CuspFVectorAndPoints) {
  const auto c = hhl::enumerate_strata(cusp());
  EXPECT_EQ(c.f_vector(), (std::vector<std::size_t>{4, 4}));
  std::set<Rational> pts;
  for (auto id : c.by_dim[0]) pts.insert(frac(c.strata[id].interior_point[0]));
  EXPECT_EQ(pts, (std::set<Rational>{Rational(0), Rational(1, 3), Rational(1, 2), Rational(2, 3)}));
}

TEST(Stratification, TorsionFVector) {
  EXPECT_EQ(hhl::enumerate_strata(torsion()).f_vector(), (std::vector<std::size_t>{3, 6, 3}));
}

TEST(Stratification, CircleFVectorAndIncidences) {
  const auto c = hhl::enumerate_strata(circle());
  EXPECT_EQ(c.f_vector(), (std::vector<std::size_t>{1, 1}));
  const auto edge = c.by_dim[1][0];
  // Ceilings are reduced modulo Z, so the canonical lift is the interval (-1, 0).
  EXPECT_EQ(c.strata[edge].type.ceilings, int_vector({0}));
  const auto recs = c.incidences_from(edge);
  ASSERT_EQ(recs.size(), 2u);
  std::map<hhl::exact::Integer, int> sign_by_eps;
  for (auto* r : recs) {
    EXPECT_EQ(r->to, c.by_dim[0][0]);
    sign_by_eps[r->epsilon[0]] = r->sign;
  }
  // The lower endpoint has epsilon 1 and is the start of the positively oriented edge.
  EXPECT_EQ(sign_by_eps.at(1), -1);
  EXPECT_EQ(sign_by_eps.at(0), 1);
}

TEST(Stratification, OrientationSignOnInterval) {
  hhl::Orientation o{{int_vector({1})}, 1};
  hhl::Orientation pt{{}, 1};
  const std::vector<Rational> mid{Rational(1, 2)};
  EXPECT_EQ(hhl::orientation_sign(o, mid, pt, {Rational(1)}), 1);
  EXPECT_EQ(hhl::orientation_sign(o, mid, pt, {Rational(0)}), -1);
  o.sign = -1;
  EXPECT_EQ(hhl::orientation_sign(o, mid, pt, {Rational(1)}), -1);
  EXPECT_EQ(hhl::orientation_sign(o, mid, pt, {Rational(0)}), 1);
}

TEST(Stratification, CuspOneCellOverFirstThird) {
  const auto c = hhl::enumerate_strata(cusp());
  const auto id = c.find({}, int_vector({1, 0}));
  ASSERT_TRUE(id);
  const auto recs = c.incidences_from(*id);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_NE(recs[0]->to, recs[1]->to);
  EXPECT_EQ(recs[0]->sign, -recs[1]->sign);
  std::set<hhl::exact::IntVector> eps{recs[0]->epsilon, recs[1]->epsilon};
  EXPECT_EQ(eps, (std::set<hhl::exact::IntVector>{int_vector({1, 0}), int_vector({0, 0})}));
}

TEST(Stratification, TranslatedSeedWindowGivesSameComplex) {
  for (const auto& in : {cusp(), torsion()}) {
    const auto a = hhl::enumerate_strata(in);
    const auto b = hhl::enumerate_strata(in, hhl::exact::IntVector(in.k, 3));
    ASSERT_EQ(a.strata.size(), b.strata.size());
    for (std::size_t i = 0; i < a.strata.size(); ++i) EXPECT_EQ(a.strata[i].type, b.strata[i].type);
    ASSERT_EQ(a.incidences.size(), b.incidences.size());
  }
}

TEST(Stratification, RandomInputsSatisfyInvariants) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> entry(-3, 3), size(1, 4);
  int checked = 0;
  while (checked < 40) {
    const std::size_t k = checked % 2 ? 2 : 1;
    const std::size_t n = k + static_cast<std::size_t>(size(rng)) % (5 - k);
    std::vector<hhl::exact::IntVector> rows(n, hhl::exact::IntVector(k));
    for (auto& r : rows)
      for (auto& x : r) x = entry(rng);
    const auto in = LatticeMapInput::from_rows(rows);
    if (hhl::exact::rank_over_rationals(in.matrix()) != k) continue;
    ++checked;
    const auto c = hhl::enumerate_strata(in);
    EXPECT_EQ(c.euler_characteristic(), 0);
    for (const auto& s : c.strata) {
      EXPECT_EQ(s.orientation.basis.size(), s.type.dim);
      for (const auto& b : s.orientation.basis)
        for (auto w : s.type.walls) EXPECT_EQ(hhl::exact::dot(in.psi[w], b), 0);
      EXPECT_TRUE(hhl::exact::is_bounded(hhl::cell_system(in, s.type)));
      if (s.type.dim == 0) continue;
      const auto recs = c.incidences_from(s.id);
      EXPECT_GE(recs.size(), s.type.dim + 1);
      for (auto* r : recs)
        for (const auto& e : r->epsilon) EXPECT_TRUE(e == 0 || e == 1);
    }
    if (k == 1) {
      std::vector<long> p;
      for (const auto& r : rows) p.push_back(r[0].convert_to<long>());
      EXPECT_EQ(c.by_dim[0].size(), circle_points(p));
    }
  }
}
