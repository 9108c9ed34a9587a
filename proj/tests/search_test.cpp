#include <chrono>

#include <gtest/gtest.h>

#include "posetlab/reference.hpp"
#include "posetlab/search.hpp"

namespace posetlab {
namespace {

Mask set_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) m |= Mask{1} << (e - 1);
  return m;
}

const std::vector<Poset> kVLambda{y_poset(1, 2), y_prime_poset(1, 2)};
const std::vector<Poset> kY22Pair{y_poset(2, 2), y_prime_poset(2, 2)};

void expect_sound(const SearchOutcome& o, const std::vector<Poset>& forbidden, const FreenessMode& mode) {
  EXPECT_EQ(o.witness.size(), o.value);
  EXPECT_TRUE(verify_free(o.witness, forbidden, mode).free);
}

TEST(LaExact, ChainOfTwoGivesMiddleBinomial) {
  const std::vector<Poset> forbid{chain(2)};
  const std::vector<std::size_t> expected{1, 2, 3, 6, 10};
  for (int n = 1; n <= 5; ++n) {
    const SearchOutcome o = la_exact(n, forbid, FreenessMode::weak());
    EXPECT_TRUE(o.exact);
    EXPECT_EQ(o.value, expected[n - 1]) << "n=" << n;
    expect_sound(o, forbid, FreenessMode::weak());
  }
}

TEST(LaExact, VAndLambda) {
  // 2 C(n-1, floor((n-1)/2))
  EXPECT_EQ(la_exact(3, kVLambda, FreenessMode::weak()).value, 4u);
  EXPECT_EQ(la_exact(4, kVLambda, FreenessMode::weak()).value, 6u);
  const SearchOutcome o = la_exact(5, kVLambda, FreenessMode::weak());
  EXPECT_EQ(o.value, 12u);
  expect_sound(o, kVLambda, FreenessMode::weak());
}

TEST(LaExact, RankPreservingY22PairAtFour) {
  const SearchOutcome o = la_exact(4, kY22Pair, FreenessMode::rank_preserving());
  EXPECT_TRUE(o.exact);
  EXPECT_EQ(o.value, 10u);
  expect_sound(o, kY22Pair, FreenessMode::rank_preserving());
  EXPECT_EQ(reference::exhaustive_la(4, kY22Pair, FreenessMode::rank_preserving()).value, 10u);
}

TEST(LaExact, AgreesWithExhaustiveOracle) {
  const std::vector<std::vector<Poset>> cases{
      {chain(2)}, {chain(3)}, kVLambda, {y_poset(1, 2)}, {antichain(2)}, kY22Pair, {y_poset(1, 3)}};
  for (int n = 1; n <= 3; ++n)
    for (const auto& forbid : cases)
      for (const FreenessMode& mode : {FreenessMode::weak(), FreenessMode::induced(),
                                       FreenessMode::rank_preserving()}) {
        const auto oracle = reference::exhaustive_la(n, forbid, mode);
        const SearchOutcome o = la_exact(n, forbid, mode);
        EXPECT_EQ(o.value, oracle.value) << "n=" << n << " mode=" << mode.name();
      }
}

TEST(LaExact, SymmetryPruningKeepsValue) {
  for (int n = 2; n <= 5; ++n) {
    SearchConfig plain, pruned;
    pruned.symmetry_pruning = true;
    const SearchOutcome a = la_exact(n, kVLambda, FreenessMode::weak(), plain);
    const SearchOutcome b = la_exact(n, kVLambda, FreenessMode::weak(), pruned);
    EXPECT_EQ(a.value, b.value);
    EXPECT_LE(b.nodes_explored, a.nodes_explored);
    expect_sound(b, kVLambda, FreenessMode::weak());
  }
  SearchConfig pruned;
  pruned.symmetry_pruning = true;
  EXPECT_EQ(la_exact(4, kY22Pair, FreenessMode::rank_preserving(), pruned).value, 10u);
}

TEST(LaExact, WorkerCountDoesNotChangeValue) {
  for (unsigned w : {1U, 2U, 3U, 4U}) {
    SearchConfig cfg;
    cfg.workers = w;
    const SearchOutcome o = la_exact(5, kVLambda, FreenessMode::weak(), cfg);
    EXPECT_TRUE(o.exact);
    EXPECT_EQ(o.value, 12u) << w << " workers";
    expect_sound(o, kVLambda, FreenessMode::weak());
  }
}

TEST(LaExact, BudgetStopsEarly) {
  SearchConfig cfg;
  cfg.budget = std::chrono::milliseconds(30);
  const auto start = std::chrono::steady_clock::now();
  const SearchOutcome o = la_exact(6, kY22Pair, FreenessMode::rank_preserving(), cfg);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_FALSE(o.exact);
  EXPECT_LT(elapsed, std::chrono::seconds(5));
  expect_sound(o, kY22Pair, FreenessMode::rank_preserving());
}

TEST(LaExact, SeedFamily) {
  SearchConfig cfg;
  cfg.seed = middle_layers(4, 2);
  const SearchOutcome o = la_exact(4, kY22Pair, FreenessMode::rank_preserving(), cfg);
  EXPECT_TRUE(o.exact);
  EXPECT_EQ(o.value, 10u);

  cfg.seed = middle_layers(4, 3);
  EXPECT_THROW(la_exact(4, kY22Pair, FreenessMode::rank_preserving(), cfg), NotFree);
  cfg.seed = middle_layers(5, 1);
  EXPECT_THROW(la_exact(4, kY22Pair, FreenessMode::rank_preserving(), cfg), InvalidParam);
}

TEST(LaExact, SeedKeepsValueUnderBudget) {
  // With a seed the incumbent never drops below it, however short the budget.
  SearchConfig cfg;
  cfg.seed = middle_layers(6, 2);
  cfg.budget = std::chrono::milliseconds(20);
  const SearchOutcome o = la_exact(6, kY22Pair, FreenessMode::rank_preserving(), cfg);
  EXPECT_GE(o.value, 35u);
  expect_sound(o, kY22Pair, FreenessMode::rank_preserving());
}

TEST(LaExact, ModeOrdering) {
  // Every rank-preserving or induced copy is a weak copy, so weak-free
  // families are free in the other modes too.
  const std::vector<std::vector<Poset>> cases{kVLambda, kY22Pair, {y_poset(1, 3)}, {chain(3)}};
  for (const auto& forbid : cases) {
    const std::size_t weak = la_exact(4, forbid, FreenessMode::weak()).value;
    EXPECT_LE(weak, la_exact(4, forbid, FreenessMode::induced()).value);
    EXPECT_LE(weak, la_exact(4, forbid, FreenessMode::rank_preserving()).value);
  }
}

TEST(VerifyFree, ReportsFirstHit) {
  const SetFamily f(3, {set_of({1}), set_of({1, 2}), set_of({1, 3})});
  const FreenessReport r = verify_free(f, {chain(3), y_poset(1, 2)}, FreenessMode::weak());
  EXPECT_FALSE(r.free);
  ASSERT_TRUE(r.poset_index && r.witness);
  EXPECT_EQ(*r.poset_index, 1u);
  EXPECT_EQ(r.witness->image[0], set_of({1}));
  EXPECT_TRUE(verify_free(f, {chain(3)}, FreenessMode::weak()).free);
  EXPECT_TRUE(verify_free(middle_layers(4, 1), {chain(2)}, FreenessMode::weak()).free);
}

TEST(Saturation, MiddleLayers) {
  EXPECT_TRUE(saturation_check(middle_layers(4, 2), kY22Pair, FreenessMode::rank_preserving()).saturated);
  EXPECT_TRUE(saturation_check(middle_layers(5, 1), {chain(2)}, FreenessMode::weak()).saturated);
}

TEST(Saturation, Counterexample) {
  const SaturationResult r = saturation_check(SetFamily(2, {set_of({1})}), {chain(2)}, FreenessMode::weak());
  EXPECT_FALSE(r.saturated);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(*r.counterexample, set_of({2}));
}

TEST(Saturation, RejectsNonFree) {
  EXPECT_THROW(saturation_check(middle_layers(4, 2), {chain(2)}, FreenessMode::weak()), NotFree);
}

TEST(Saturation, AgreesWithBruteForce) {
  const SetFamily f = middle_layers(4, 2);
  for (Mask s = 0; s < 16; ++s) {
    if (f.contains(s)) continue;
    const SetFamily g = f.with(s);
    bool creates = false;
    for (const Poset& p : kY22Pair)
      creates |= reference::brute_force_copy(g.members(), p, FreenessMode::rank_preserving(), s).has_value();
    EXPECT_TRUE(creates) << s;
  }
}

TEST(MaxFreeLayers, Examples) {
  EXPECT_EQ(max_free_layers(chain(2), 5, FreenessMode::weak()), 1);
  EXPECT_EQ(max_free_layers(y_poset(2, 2), 6, FreenessMode::weak()), 2);
  EXPECT_EQ(max_free_layers(t_r3(2), 8, FreenessMode::rank_preserving()), 2);
  EXPECT_EQ(max_free_layers(antichain(2), 3, FreenessMode::weak()), 0);
}

}  // namespace
}  // namespace posetlab
