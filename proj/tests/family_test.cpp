#include <random>

#include <gtest/gtest.h>

#include "posetlab/family.hpp"
#include "posetlab/io.hpp"
#include "posetlab/verify.hpp"

namespace posetlab {
namespace {

Mask set_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) m |= Mask{1} << (e - 1);
  return m;
}

TEST(SetFamily, CanonicalOrder) {
  const SetFamily f(3, {set_of({1, 2}), set_of({3}), 0, set_of({1})});
  EXPECT_EQ(f.members(), (std::vector<Mask>{0, set_of({1}), set_of({3}), set_of({1, 2})}));
  EXPECT_TRUE(f.contains(set_of({3})));
  EXPECT_FALSE(f.contains(set_of({2})));
}

TEST(SetFamily, RejectsBadInput) {
  EXPECT_THROW(SetFamily(3, {set_of({4})}), ElementOutOfRange);
  EXPECT_THROW(SetFamily(3, {1, 1}), InvalidParam);
  EXPECT_THROW(SetFamily(0, {}), InvalidParam);
  EXPECT_THROW(SetFamily(25, {}), InvalidParam);
}

TEST(SetFamily, WithKeepsOrder) {
  const SetFamily f(3, {0, set_of({1, 2, 3})});
  const SetFamily g = f.with(set_of({2}));
  EXPECT_EQ(g.members(), (std::vector<Mask>{0, set_of({2}), set_of({1, 2, 3})}));
  EXPECT_THROW(g.with(0), AlreadyMember);
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma(4, 2), 10);
  EXPECT_EQ(sigma(5, 2), 20);
  EXPECT_EQ(sigma(6, 2), 35);
  EXPECT_THROW(sigma(4, 0), InvalidParam);
  EXPECT_THROW(sigma(4, 6), InvalidParam);
}

TEST(Sigma, AllLayers) {
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(sigma(n, n + 1), BigInt(1) << n);
}

TEST(MiddleLayers, Examples) {
  EXPECT_EQ(layer_profile(middle_layers(4, 2)), (LayerProfile{0, 0, 6, 4, 0}));
  EXPECT_EQ(layer_profile(middle_layers(5, 1)), (LayerProfile{0, 0, 0, 10, 0, 0}));
  const SetFamily f = middle_layers(6, 2);
  EXPECT_EQ(f.size(), 35u);
  EXPECT_EQ(layer_profile(f), (LayerProfile{0, 0, 0, 20, 15, 0, 0}));
  EXPECT_THROW(middle_layers(4, 6), InvalidParam);
}

TEST(MiddleLayers, SizeMatchesSigma) {
  for (int n = 1; n <= 12; ++n)
    for (int h = 1; h <= n + 1; ++h) EXPECT_EQ(BigInt(middle_layers(n, h).size()), sigma(n, h));
}

TEST(F23, SizeAtSixByEnumeration) {
  const SetFamily f = f23_construction(6);
  EXPECT_EQ(f.size(), 22u);
  EXPECT_EQ(layer_profile(f), (LayerProfile{0, 0, 0, 16, 6, 0, 0}));
  EXPECT_GT(BigInt(f.size()), binomial(6, 3));
  EXPECT_EQ(f23_published_size(6), 17);
}

TEST(F23, MatchesSetBuilderConditions) {
  for (int n = 4; n <= 12; n += 2) {
    // Oracle: test each subset against the two conditions, element by element.
    std::size_t expected = 0;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      int size = 0;
      bool has_penult = false, has_last = false;
      for (int e = 1; e <= n; ++e)
        if (m >> (e - 1) & 1U) {
          ++size;
          has_penult |= e == n - 1;
          has_last |= e == n;
        }
      if (size == n / 2 + 1 && has_penult && has_last) ++expected;
      if (size == n / 2 && !(has_penult && has_last)) ++expected;
    }
    EXPECT_EQ(f23_construction(n).size(), expected) << "n=" << n;
  }
}

TEST(F23, RejectsOddAndSmall) {
  EXPECT_THROW(f23_construction(5), OddN);
  EXPECT_THROW(f23_construction(2), InvalidParam);
}

TEST(LubellTail, Examples) {
  EXPECT_EQ(layer_profile(lubell_tail_family(8, 3)), (LayerProfile{1, 8, 0, 0, 0, 0, 0, 8, 1}));
  EXPECT_EQ(lubell_tail_family(8, 3).size(), 18u);
  EXPECT_EQ(lubell_tail_family(6, 3).size(), 14u);
  EXPECT_THROW(lubell_tail_family(5, 3), InvalidParam);
  EXPECT_THROW(lubell_tail_family(8, 2), InvalidParam);
}

TEST(LayerProfile, EmptySetOnly) {
  EXPECT_EQ(layer_profile(SetFamily(3, {0})), (LayerProfile{1, 0, 0, 0}));
}

TEST(FamilyText, Parse) {
  const SetFamily f = parse_family("n=3\n1,2\n3\n");
  EXPECT_EQ(f.n(), 3);
  EXPECT_EQ(f.members(), (std::vector<Mask>{set_of({3}), set_of({1, 2})}));
  EXPECT_EQ(parse_family("n=2\n-\n").members(), (std::vector<Mask>{0}));
}

TEST(FamilyText, CanonicalSerialization) {
  EXPECT_EQ(serialize_family(parse_family("n=3\n1,2\n3\n")), "n=3\n3\n1,2\n");
  EXPECT_EQ(serialize_family(parse_family("n=3\r\n 2 , 1 \n\n-\n")), "n=3\n-\n1,2\n");
}

TEST(FamilyText, Errors) {
  EXPECT_THROW(parse_family("n=3\n4\n"), ElementOutOfRange);
  EXPECT_THROW(parse_family("n=3\n0\n"), ElementOutOfRange);
  EXPECT_THROW(parse_family(""), ParseError);
  EXPECT_THROW(parse_family("3\n1\n"), ParseError);
  EXPECT_THROW(parse_family("n=30\n"), ParseError);
  try {
    parse_family("n=3\n1\nx,2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_family("n=3\n1,2\n2,1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(FamilyText, RoundTripOnRandomFamilies) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const SetFamily f = claims::random_family(rng, 1 + i % 10);
    EXPECT_EQ(parse_family(serialize_family(f)), f);
  }
}

}  // namespace
}  // namespace posetlab
