#include <gtest/gtest.h>

#include <random>

#include "coarse/cover.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

SpacePtr interval(long a, long b) { return share(integer_interval(a, b)); }

}  // namespace

TEST(Cover, IntervalExample) {
  const Cover c(interval(0, 9), {{0, 1, 2, 3, 4, 5, 6}, {4, 5, 6, 7, 8, 9}});
  const auto leb = lebesgue_number(c);
  EXPECT_DOUBLE_EQ(leb.value, 2.0);
  EXPECT_EQ(leb.critical_point, std::optional<PointIndex>(5));
  EXPECT_EQ(multiplicity(c), 2u);
  EXPECT_EQ(cover_dimension(c), 1);
  EXPECT_DOUBLE_EQ(mesh(c), 6.0);
}

TEST(Cover, RejectsUncoveredPoints) {
  try {
    Cover(interval(0, 4), {{0, 1}, {3, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotACover);
    EXPECT_EQ(e.witness(), std::vector<std::size_t>{2});
  }
  EXPECT_THROW(Cover(interval(0, 1), {{0, 1, 5}}), Error);
}

TEST(Cover, MembersAreSortedAndDeduplicated) {
  const Cover c(interval(0, 3), {{3, 1, 1, 0}, {2}});
  EXPECT_EQ(c.member(0), (PointSet{0, 1, 3}));
  EXPECT_EQ(std::vector<std::size_t>(c.containing(1).begin(), c.containing(1).end()), std::vector<std::size_t>{0});
  EXPECT_EQ(c.complement(0), (PointSet{2}));
}

TEST(Cover, WholeSpaceMemberGivesInfiniteLebesgue) {
  const Cover c(interval(0, 5), {{0, 1, 2, 3, 4, 5}, {2}});
  EXPECT_TRUE(lebesgue_number(c).infinite());
  EXPECT_FALSE(lebesgue_number(c).critical_point.has_value());
}

TEST(Cover, StatisticsMatchBruteForceOnRandomCovers) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    SpacePtr X;
    switch (trial % 3) {
      case 0: X = share(oracle::random_metric(5 + trial % 17, rng)); break;
      case 1: X = share(integer_grid(0, 3 + trial % 6)); break;
      default: X = share(integer_interval(0, 10 + trial)); break;
    }
    const auto members = oracle::random_members(X->size(), 2 + trial % 4, 0.4, rng);
    const Cover c(X, members);
    EXPECT_DOUBLE_EQ(lebesgue_number(c).value, oracle::lebesgue(*X, members));
    EXPECT_EQ(multiplicity(c), oracle::multiplicity(*X, members));
    double m = 0.0;
    for (const auto& s : members) m = std::max(m, oracle::diameter(*X, s));
    EXPECT_DOUBLE_EQ(mesh(c), m);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto f = complement_distances(c, i);
      for (PointIndex x = 0; x < X->size(); ++x) {
        double ref = INFINITY;
        for (PointIndex y = 0; y < X->size(); ++y) {
          if (!oracle::in(members[i], y)) ref = std::min(ref, X->distance(x, y));
        }
        if (!oracle::in(members[i], x)) ref = 0.0;
        EXPECT_DOUBLE_EQ(f[x], ref);
      }
    }
  }
}

TEST(Cover, CriticalPointIsFirstMinimizer) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto X = share(integer_interval(0, 30));
    const auto members = oracle::random_members(X->size(), 3, 0.5, rng);
    const Cover c(X, members);
    const auto leb = lebesgue_number(c);
    if (leb.infinite()) continue;
    std::optional<PointIndex> first;
    for (PointIndex x = 0; x < X->size() && !first; ++x) {
      double best = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) best = std::max(best, complement_distances(c, i)[x]);
      if (best == leb.value) first = x;
    }
    EXPECT_EQ(leb.critical_point, first);
  }
}

TEST(Cover, RefinementAndShrink) {
  const auto X = interval(0, 9);
  const Cover coarse(X, {{0, 1, 2, 3, 4, 5}, {4, 5, 6, 7, 8, 9}});
  const Cover fine(X, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9}});
  const auto rep = is_refinement(fine, coarse);
  EXPECT_TRUE(rep.refines);
  EXPECT_EQ(rep.witness[1], std::optional<std::size_t>(0));
  const Cover shrunk = shrink_to_indexed(fine, coarse);
  EXPECT_EQ(shrunk.member(0), (PointSet{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(shrunk.member(1), (PointSet{6, 7, 8, 9}));

  const Cover wide(X, {{0, 1, 2, 3, 4, 5, 6}, {7, 8, 9}});
  const auto bad = is_refinement(wide, coarse);
  EXPECT_FALSE(bad.refines);
  EXPECT_EQ(bad.failing_member, std::optional<std::size_t>(0));
  EXPECT_THROW(shrink_to_indexed(wide, coarse), Error);
  EXPECT_THROW(is_refinement(fine, Cover(interval(0, 10), {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}})), Error);
}

TEST(Cover, ShrinkIsIndexedRefinementOnRandomInstances) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto X = share(integer_interval(0, 25));
    const auto coarse_members = oracle::random_members(X->size(), 3, 0.5, rng);
    const Cover coarse(X, coarse_members);
    // Singletons refine every cover.
    std::vector<PointSet> fine_members;
    for (PointIndex x = 0; x < X->size(); ++x) fine_members.push_back({x});
    const Cover fine(X, fine_members);
    const Cover shrunk = shrink_to_indexed(fine, coarse);
    for (PointIndex x = 0; x < X->size(); ++x) {
      std::size_t lowest = 0;
      while (!oracle::in(coarse_members[lowest], x)) ++lowest;
      for (std::size_t i = 0; i < shrunk.size(); ++i) EXPECT_EQ(shrunk.contains(i, x), i == lowest);
    }
  }
}

TEST(Cover, DisjointnessMatchesBruteForce) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const auto X = trial % 2 ? integer_grid(0, 8) : integer_interval(0, 60);
    std::vector<PointSet> family(3);
    for (PointIndex x = 0; x < X.size(); ++x) {
      const auto r = rng() % 6;
      if (r < 3) family[r].push_back(x);
    }
    const double r = static_cast<double>(rng() % 4);
    bool expected = true;
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        for (PointIndex x : family[a]) {
          for (PointIndex y : family[b]) expected = expected && X.distance(x, y) > r + 1e-9;
        }
      }
    }
    const auto rep = is_r_disjoint(X, family, r);
    EXPECT_EQ(rep.disjoint, expected);
    if (!rep.disjoint) {
      ASSERT_TRUE(rep.points.has_value());
      EXPECT_LE(X.distance(rep.points->first, rep.points->second), r + 1e-9);
    }
  }
}

TEST(Cover, DisjointnessBoundaryIsStrict) {
  const auto X = integer_interval(0, 10);
  const std::vector<PointSet> family = {{0, 1}, {5, 6}};
  EXPECT_TRUE(is_r_disjoint(X, family, 3.5).disjoint);
  EXPECT_FALSE(is_r_disjoint(X, family, 4.0).disjoint);
}

TEST(Cover, DropsEmptyMembers) {
  const Cover c(interval(0, 3), {{}, {0, 1, 2, 3}, {}});
  const Cover d = without_empty_members(c);
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(multiplicity(d), multiplicity(c));
}

TEST(ColoredCover, FamiliesAndFlatMembers) {
  const auto X = interval(0, 9);
  const ColoredCover cc(X, {{{0, 1, 2}, {7, 8, 9}}, {{2, 3, 4, 5, 6, 7}}}, 2.0);
  EXPECT_EQ(cc.family_count(), 2u);
  EXPECT_EQ(cc.flat().size(), 3u);
  EXPECT_EQ(cc.family(0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(cc.family_of(2), 1u);
  EXPECT_EQ(cc.family_members(0).size(), 2u);
  EXPECT_THROW(ColoredCover(Cover(X, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}), {{0}, {0}}, 1.0), Error);
}

class BrickZ : public ::testing::TestWithParam<long> {};

TEST_P(BrickZ, ContractHoldsByBruteForce) {
  const long L = GetParam();
  for (long last : {8 * L, 13 * L + 3, 30 * L + 1}) {
    const auto cc = brick_cover_Z(0, last, L);
    const auto& X = cc.flat().metric();
    EXPECT_EQ(cc.family_count(), 2u);
    for (std::size_t f = 0; f < 2; ++f) {
      const auto members = cc.family_members(f);
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          for (PointIndex x : members[a]) {
            for (PointIndex y : members[b]) EXPECT_GT(X.distance(x, y), static_cast<double>(L));
          }
        }
      }
    }
    EXPECT_GE(oracle::lebesgue(X, cc.flat().members()), static_cast<double>(L));
    EXPECT_LE(oracle::multiplicity(X, cc.flat().members()), 2u);
    for (const auto& m : cc.flat().members()) EXPECT_LT(oracle::diameter(X, m), 5.0 * L);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, BrickZ, ::testing::Values(1L, 2L, 3L, 10L));

TEST(Bricks, Z2ContractHoldsByBruteForce) {
  for (long L : {1L, 2L}) {
    const auto cc = brick_cover_Z2(0, 20 * L, L);
    const auto& X = cc.flat().metric();
    EXPECT_EQ(cc.family_count(), 3u);
    for (std::size_t f = 0; f < 3; ++f) {
      const auto rep = is_r_disjoint(X, cc.family_members(f), static_cast<double>(L));
      EXPECT_TRUE(rep.disjoint);
    }
    EXPECT_GE(oracle::lebesgue(X, cc.flat().members()), static_cast<double>(L));
    EXPECT_LE(oracle::multiplicity(X, cc.flat().members()), 3u);
    for (const auto& m : cc.flat().members()) EXPECT_LE(oracle::diameter(X, m), 20.0 * L);
  }
}

TEST(Bricks, SmallWindowsAreRejected) {
  try {
    brick_cover_Z(0, 15, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowTooSmall);
  }
  EXPECT_NO_THROW(brick_cover_Z(0, 16, 2));
  EXPECT_THROW(brick_cover_Z2(0, 30, 2), Error);
  EXPECT_THROW(brick_cover_Z(share(integer_grid(0, 20)), 1), Error);
}
