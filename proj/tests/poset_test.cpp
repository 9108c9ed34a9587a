#include <random>

#include <gtest/gtest.h>

#include "posetlab/poset.hpp"
#include "posetlab/verify.hpp"

namespace posetlab {
namespace {

TEST(PosetFromCovers, TwoChain) {
  const Poset p = poset_from_covers({"a", "b"}, {{"a", "b"}});
  ASSERT_EQ(p.size(), 2);
  EXPECT_TRUE(p.less(0, 1));
  EXPECT_FALSE(p.less(1, 0));
  EXPECT_EQ(p.covers().size(), 1u);
}

TEST(PosetFromCovers, BuildsY22) {
  const Poset p = poset_from_covers({"x1", "x2", "y1", "y2"},
                                    {{"x1", "x2"}, {"x2", "y1"}, {"x2", "y2"}});
  EXPECT_EQ(p, y_poset(2, 2));
  EXPECT_TRUE(p.less(0, 2));  // x1 < y1 through x2
  EXPECT_FALSE(p.comparable(2, 3));
}

TEST(PosetFromCovers, RejectsCycle) {
  EXPECT_THROW(poset_from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
  EXPECT_THROW(poset_from_covers({"a"}, {{"a", "a"}}), CycleError);
}

TEST(PosetFromCovers, RejectsDuplicateLabel) {
  EXPECT_THROW(poset_from_covers({"a", "a"}, {}), DuplicateLabel);
}

TEST(PosetFromCovers, RejectsUnknownLabel) {
  EXPECT_THROW(poset_from_covers({"a"}, {{"a", "z"}}), InvalidParam);
}

TEST(PosetFromCovers, DropsImpliedCovers) {
  const Poset p = poset_from_covers({"c1", "c2", "c3"}, {{"c1", "c2"}, {"c2", "c3"}, {"c1", "c3"}});
  EXPECT_EQ(p, chain(3));
  EXPECT_EQ(p.covers().size(), 2u);
}

TEST(PosetFromCovers, ReductionIsIdempotent) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Poset p = claims::random_poset(rng, 1 + i % 7);
    const Poset again = Poset::from_indexed(p.labels(), p.covers());
    EXPECT_EQ(again, p);
  }
}

TEST(Dual, YPrimeIsLambda) {
  const Poset lambda = dual(y_poset(1, 2));
  // x1 above two incomparable elements.
  EXPECT_TRUE(lambda.less(1, 0));
  EXPECT_TRUE(lambda.less(2, 0));
  EXPECT_FALSE(lambda.comparable(1, 2));
  EXPECT_EQ(lambda, y_prime_poset(1, 2));
}

TEST(Dual, Involution) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Poset p = claims::random_poset(rng, 1 + i % 8);
    EXPECT_EQ(dual(dual(p)), p);
  }
}

TEST(Dual, AntichainIsSelfDual) { EXPECT_EQ(dual(antichain(3)), antichain(3)); }

TEST(RankAssignment, YPoset) {
  for (int h = 1; h <= 4; ++h)
    for (int s = 1; s <= 3; ++s) {
      const RankAssignment ra = rank_assignment(y_poset(h, s));
      EXPECT_TRUE(ra.graded);
      for (int i = 0; i < h; ++i) EXPECT_EQ(ra.rank[i], i);
      for (int j = 0; j < s; ++j) EXPECT_EQ(ra.rank[h + j], h);
    }
}

TEST(RankAssignment, NonGraded) {
  const Poset p = poset_from_covers({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "d"}, {"c", "d"}});
  const RankAssignment ra = rank_assignment(p);
  EXPECT_EQ(ra.rank, (std::vector<int>{0, 1, 0, 2}));
  EXPECT_FALSE(ra.graded);
}

TEST(RankAssignment, Antichain) {
  const RankAssignment ra = rank_assignment(antichain(4));
  EXPECT_EQ(ra.rank, (std::vector<int>(4, 0)));
  EXPECT_TRUE(ra.graded);
}

TEST(RankAssignment, GeneratorsAreGraded) {
  const std::vector<int> levels{2, 3, 1};
  for (const Poset& p : {chain(5), antichain(2), y_poset(3, 2), y_prime_poset(2, 3), t_r3(3),
                         t_r3(2, TreeDegreeReading::child_count), complete_multilevel(levels)}) {
    const RankAssignment ra = rank_assignment(p);
    ASSERT_TRUE(ra.graded);
    for (auto [a, b] : p.covers()) EXPECT_EQ(ra.rank[b] - ra.rank[a], 1);
    // Rank classes of a graded poset are antichains.
    EXPECT_NO_THROW(validate_coloring(p, rank_coloring(p)));
  }
}

TEST(Height, Examples) {
  EXPECT_EQ(height(chain(4)), 4);
  EXPECT_EQ(height(chain(1)), 1);
  EXPECT_EQ(height(y_poset(2, 2)), 3);
  EXPECT_EQ(height(antichain(5)), 1);
}

TEST(GenNamed, Y22Shape) {
  const std::vector<int> params{2, 2};
  const Poset p = gen_named("y", params);
  EXPECT_EQ(p.size(), 4);
  EXPECT_EQ(p.covers().size(), 3u);
}

TEST(GenNamed, YFamilyProperties) {
  for (int h = 1; h <= 4; ++h)
    for (int s = 2; s <= 4; ++s) {
      const Poset p = y_poset(h, s);
      EXPECT_EQ(height(p), h + 1);
      EXPECT_TRUE(rank_assignment(p).graded);
      EXPECT_EQ(classify_tree(p), TreeClass::monotone_increasing);
      EXPECT_EQ(classify_tree(y_prime_poset(h, s)), TreeClass::monotone_decreasing);
    }
}

TEST(GenNamed, TR3HasseDegrees) {
  // Inspect the generated Hasse diagram directly.
  const Poset t = t_r3(2);
  ASSERT_EQ(t.size(), 5);
  int leaves = 0, middles = 0;
  for (int x = 0; x < t.size(); ++x) {
    if (t.is_maximal(x)) {
      ++leaves;
      EXPECT_EQ(t.hasse_degree(x), 1);
    } else {
      if (!t.is_minimal(x)) ++middles;
      EXPECT_EQ(t.hasse_degree(x), 2) << t.label(x);
    }
  }
  EXPECT_EQ(leaves, 2);
  EXPECT_EQ(middles, 2);
  EXPECT_EQ(height(t), 3);

  for (int r = 2; r <= 5; ++r) {
    const Poset tr = t_r3(r);
    for (int x = 0; x < tr.size(); ++x)
      if (!tr.is_maximal(x)) EXPECT_EQ(tr.hasse_degree(x), r);
  }
}

TEST(GenNamed, TR3ChildCountReading) {
  const Poset t = t_r3(2, TreeDegreeReading::child_count);
  EXPECT_EQ(t.size(), 7);  // root, 2 middles, 4 leaves
  EXPECT_EQ(classify_tree(t), TreeClass::monotone_increasing);
}

TEST(GenNamed, Errors) {
  EXPECT_THROW(chain(0), InvalidParam);
  EXPECT_THROW(y_poset(0, 2), InvalidParam);
  EXPECT_THROW(t_r3(1), InvalidParam);
  const std::vector<int> bad{1, 2, 3};
  EXPECT_THROW(gen_named("y", bad), InvalidParam);
  EXPECT_THROW(gen_named("nope", bad), InvalidParam);
  EXPECT_EQ(chain(1).size(), 1);
}

TEST(ClassifyTree, Butterfly) {
  const std::vector<int> levels{2, 2};
  EXPECT_EQ(classify_tree(complete_multilevel(levels)), TreeClass::not_tree);
}

TEST(ClassifyTree, DualOfMonotoneIncreasing) {
  EXPECT_EQ(classify_tree(t_r3(2)), TreeClass::monotone_increasing);
  EXPECT_EQ(classify_tree(dual(t_r3(2))), TreeClass::monotone_decreasing);
}

TEST(ClassifyTree, PlainTreeAndForest) {
  // Zigzag a < b > c < d: a tree with two minima and two maxima.
  const Poset zig = poset_from_covers({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "b"}, {"c", "d"}});
  EXPECT_EQ(classify_tree(zig), TreeClass::tree);
  EXPECT_EQ(classify_tree(antichain(2)), TreeClass::not_tree);
}

TEST(Coloring, RejectsComparableClass) {
  EXPECT_THROW(validate_coloring(chain(2), Coloring{{0, 0}}), InvalidColoring);
  EXPECT_THROW(validate_coloring(chain(2), Coloring{{0}}), InvalidColoring);
  EXPECT_NO_THROW(validate_coloring(y_poset(1, 2), Coloring{{0, 1, 2}}));
}

TEST(Coloring, RankColoringNeedsGraded) {
  const Poset p = poset_from_covers({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "d"}, {"c", "d"}});
  EXPECT_THROW(rank_coloring(p), NotGraded);
}

}  // namespace
}  // namespace posetlab
