#include <gtest/gtest.h>

#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fixtures.hpp"

using namespace fairdiv;
using fairdiv::testing::example_4x7;
using fairdiv::testing::example_4x7_alloc;
using fairdiv::testing::make;

namespace {

Allocation alloc(std::vector<GoodSet> bundles, GoodSet pool = {}) {
  Allocation a;
  a.bundles = std::move(bundles);
  a.pool = std::move(pool);
  return a;
}

Potential sources(std::vector<long> v) {
  Potential p;
  p.tag = PotentialTag::kSources;
  for (long x : v) p.coords.emplace_back(x);
  return p;
}

}  // namespace

TEST(StrongEnvy, SingletonNeverEnvied) {
  const Instance inst = make({{0, 9}, {1, 1}});
  const Allocation a = alloc({GoodSet{0}, GoodSet{1}});
  for (Beta b : {Beta::kZero, Beta::kOne, Beta::kSqrt2}) {
    EXPECT_FALSE(beta_strong_envy(inst, a, 0, 1, b).has_value());
  }
}

TEST(StrongEnvy, TwoGoodsOfThree) {
  // v_0(X_0) = 1, X_1 = two goods worth 3 each.
  const Instance inst = make({{1, 3, 3}, {0, 1, 1}});
  const Allocation a = alloc({GoodSet{0}, GoodSet{1, 2}});
  const auto e = beta_strong_envy(inst, a, 0, 1, Beta::kOne);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->witness, 1u);
  EXPECT_EQ(e->margin, Rational(2));
  const auto s = beta_strong_envy(inst, a, 0, 1, Beta::kSqrt2);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->margin, Rational(7));  // 3^2 - 2 * 1^2
  const FairnessReport r = check_alpha_efx(inst, a, Beta::kOne);
  ASSERT_FALSE(r.pass());
  EXPECT_EQ(r.violations[0].i, 0u);
  EXPECT_EQ(r.violations[0].j, 1u);
}

TEST(StrongEnvy, ZeroValuedGoodIsRemovedFirst) {
  // Removing the good agent 0 does not value leaves the whole envied value.
  const Instance inst = make({{2, 5, 0}, {0, 1, 1}});
  const Allocation a = alloc({GoodSet{0}, GoodSet{1, 2}});
  const auto e = beta_strong_envy(inst, a, 0, 1, Beta::kOne);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->witness, 2u);
}

TEST(Efx, ExampleAllocationPasses) {
  EXPECT_TRUE(check_alpha_efx(example_4x7(), example_4x7_alloc(), Beta::kOne).pass());
  for (AgentId i = 0; i < 4; ++i) {
    for (AgentId j = 0; j < 4; ++j) {
      if (i != j) EXPECT_FALSE(beta_strong_envy(example_4x7(), example_4x7_alloc(), i, j, Beta::kOne));
    }
  }
}

TEST(Efx, AllSingletonsPass) {
  const Instance inst = make({{5, 1, 9}, {9, 9, 9}, {1, 1, 1}});
  EXPECT_TRUE(check_alpha_efx(inst, alloc({GoodSet{0}, GoodSet{1}, GoodSet{2}}), Beta::kOne).pass());
}

TEST(Ef2x, ThreeGoodsOfTwo) {
  const Instance inst = make({{1, 2, 2, 2}, {0, 1, 1, 1}});
  const Allocation a = alloc({GoodSet{0}, GoodSet{1, 2, 3}});
  const FairnessReport r = check_ef2x(inst, a);
  ASSERT_FALSE(r.pass());
  EXPECT_EQ(r.violations[0].witness.size(), 2u);
  EXPECT_EQ(r.violations[0].margin, Rational(1));
  EXPECT_TRUE(check_ef2x(inst, alloc({GoodSet{0, 1}, GoodSet{2, 3}})).pass());
}

TEST(VirtualEfx, ExampleWithRanks) {
  const Instance inst = example_4x7();
  const Allocation a = example_4x7_alloc();
  const RankTable t = compute_ranks(EnvyGraph::build(inst, a));
  EXPECT_TRUE(check_virtual_efx(inst, a, t).pass());
}

TEST(Properties, SingletonSeedPassesAll) {
  const Instance inst = make({{3, 0, 1}, {0, 2, 0}, {1, 0, 4}});
  const Allocation a = alloc({GoodSet{0}, GoodSet{1}, GoodSet{2}});
  for (const auto& name : property_names()) {
    EXPECT_TRUE(check_named_property(inst, a, name).pass()) << name;
  }
  EXPECT_THROW(check_named_property(inst, a, "nope"), UnknownProperty);
}

TEST(Properties, NonSourceWithIrrelevantGoodFailsDdagger) {
  // Agent 0 envies agent 1 (value 5 > 1), and agent 1 holds good 2 which it
  // does not value.
  const Instance inst = make({{1, 5, 0}, {0, 1, 0}});
  const Allocation a = alloc({GoodSet{0}, GoodSet{1, 2}});
  EXPECT_FALSE(check_named_property(inst, a, "ddagger").pass());
  EXPECT_FALSE(check_named_property(inst, a, "section").pass());
}

TEST(Properties, SuperUnitCycleFailsDagger) {
  const Instance inst = make({{1, 2}, {2, 1}});
  EXPECT_FALSE(check_named_property(inst, alloc({GoodSet{0}, GoodSet{1}}), "dagger").pass());
}

TEST(Properties, UparrowReportsCorrespondingAgent) {
  const Instance inst = example_4x7();
  // Every bundle typed: {0,1} type {0,2}; {2} type {0,3}; {3} type {1,2}; {6} type {2,3}.
  const Allocation a = alloc({GoodSet{0, 1}, GoodSet{3}, GoodSet{6}, GoodSet{2}}, GoodSet{4, 5});
  const FairnessReport r = check_named_property(inst, a, "uparrow");
  ASSERT_EQ(r.corresponding.size(), 4u);
  EXPECT_EQ(r.corresponding[0], std::optional<AgentId>(2));
  EXPECT_EQ(r.corresponding[1], std::optional<AgentId>(2));
}

TEST(Potentials, CxxraGrowsWithAllocatedGood) {
  const Instance inst = make({{3, 1}});
  const Allocation empty = alloc({GoodSet{}}, GoodSet{0, 1});
  const Allocation one = alloc({GoodSet{0}}, GoodSet{1});
  EXPECT_EQ(compare(potential(inst, one, PotentialTag::kCxxra), potential(inst, empty, PotentialTag::kCxxra)),
            std::strong_ordering::greater);
}

TEST(Potentials, SourcesSentinelOrder) {
  EXPECT_EQ(compare(sources({3, 5}), sources({4})), std::strong_ordering::less);
  EXPECT_EQ(compare(sources({4}), sources({4, 7})), std::strong_ordering::greater);
  EXPECT_EQ(compare(sources({4, 7}), sources({4, 7})), std::strong_ordering::equal);
  EXPECT_EQ(sources({3, 5}).describe(), (std::vector<std::string>{"3", "5", "inf"}));
}

TEST(Potentials, PqraxSatisfiedCountDominates) {
  const Instance inst = make({{2, 0}, {0, 3}});
  const Allocation a = alloc({GoodSet{0}, GoodSet{1}});
  const Potential all = potential(inst, a, PotentialTag::kPqrax, PropertyContext{{true, true}});
  const Potential one = potential(inst, a, PotentialTag::kPqrax, PropertyContext{{true, false}});
  EXPECT_EQ(compare(one, all), std::strong_ordering::greater);
}

TEST(Potentials, NswFewerZerosWins) {
  const Instance inst = make({{1, 0, 0}, {0, 1, 100}});
  const Potential a = potential(inst, alloc({GoodSet{}, GoodSet{0, 1, 2}}), PotentialTag::kNsw);
  const Potential b = potential(inst, alloc({GoodSet{0}, GoodSet{1}}, GoodSet{2}), PotentialTag::kNsw);
  EXPECT_EQ(compare(b, a), std::strong_ordering::greater);
  EXPECT_THROW(compare(a, sources({1})), InvariantViolated);
}
