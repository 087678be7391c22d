#include "hhl/grading.hpp"

#include <gtest/gtest.h>

using hhl::GradingGroup;
using hhl::exact::IntMatrix;
using hhl::exact::int_vector;
using hhl::exact::operator+;

namespace {

GradingGroup cusp() { return GradingGroup(IntMatrix{{3}, {-2}}); }
GradingGroup torsion() { return GradingGroup(IntMatrix{{2, -1}, {-1, 2}}); }

}  // namespace

TEST(Grading, CuspProjectionIsTwoAPlusThreeB) {
  const auto g = cusp();
  EXPECT_EQ(g.free_rank(), 1u);
  EXPECT_TRUE(g.torsion().empty());
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      const auto l = g.project(int_vector({a, b}));
      ASSERT_EQ(l.free_part.size(), 1u);
      EXPECT_EQ(l.free_part[0], 2 * a + 3 * b);
    }
}

TEST(Grading, TorsionExampleIsZMod3) {
  const auto g = torsion();
  EXPECT_EQ(g.free_rank(), 0u);
  ASSERT_EQ(g.torsion().size(), 1u);
  EXPECT_EQ(g.torsion()[0], 3);
  EXPECT_EQ(g.order(), 3);
  EXPECT_EQ(g.window(5).size(), 3u);
}

TEST(Grading, IdentityIsTrivial) {
  const GradingGroup g(IntMatrix{{1}});
  EXPECT_TRUE(g.is_trivial());
  EXPECT_EQ(g.window(3).size(), 1u);
}

TEST(Grading, KernelIsColumnLattice) {
  for (const auto& g : {cusp(), torsion()}) {
    const auto& rel = g.relations();
    for (std::size_t c = 0; c < rel.cols(); ++c) EXPECT_EQ(g.project(rel.col(c)), g.zero());
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) {
        const auto v = int_vector({a, b});
        EXPECT_EQ(g.project(v) == g.zero(), g.lattice().contains(v));
      }
  }
}

TEST(Grading, LiftRoundTrip) {
  for (const auto& g : {cusp(), torsion()})
    for (const auto& l : g.window(4)) EXPECT_EQ(g.project(g.lift(l)), l);
}

TEST(Grading, AddAndNegateMatchVectorArithmetic) {
  const auto g = torsion();
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      const auto v = int_vector({a, b}), w = int_vector({b, 1});
      EXPECT_EQ(g.add(g.project(v), g.project(w)), g.project(v + w));
      EXPECT_EQ(g.negate(g.project(v)), g.project(int_vector({-a, -b})));
    }
}

TEST(Grading, WindowIsSortedAndComplete) {
  const GradingGroup g(IntMatrix{{1}, {1}, {-2}});
  const auto w = g.window(2);
  EXPECT_EQ(w.size(), 25u);
  EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
}
