#include <gtest/gtest.h>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/framework.hpp"
#include "fairdiv/generator.hpp"
#include "fairdiv/graph.hpp"
#include "fairdiv/oracle.hpp"
#include "fixtures.hpp"

using namespace fairdiv;
using fairdiv::testing::example_4x7;
using fairdiv::testing::example_4x7_alloc;
using fairdiv::testing::make;

namespace {
Instance three_by_four() { return make({{1, 2, 3, 4}, {4, 3, 2, 1}, {2, 2, 2, 2}}); }
}  // namespace

TEST(Oracle, EnumerationCounts) {
  const Instance inst = make({{1, 1, 1}, {1, 1, 1}});
  std::size_t complete = 0;
  oracle::enumerate_complete(inst, {}, [&](const Allocation& a) {
    EXPECT_TRUE(a.complete());
    ++complete;
    return true;
  });
  EXPECT_EQ(complete, 8u);
  const Instance five = make({{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}});
  std::size_t partial = 0;
  oracle::enumerate_partial(five, {}, [&](const Allocation&) { return ++partial, true; });
  EXPECT_EQ(partial, 243u);
  std::size_t stopped = 0;
  oracle::enumerate_partial(five, {}, [&](const Allocation&) { return ++stopped < 10; });
  EXPECT_EQ(stopped, 10u);
}

TEST(Oracle, EnumerationOrderGoodZeroMostSignificant) {
  const Instance inst = make({{1, 1}, {1, 1}});
  std::vector<Allocation> seen;
  oracle::enumerate_complete(inst, {}, [&](const Allocation& a) { return seen.push_back(a), true; });
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen[0].bundles[0], (GoodSet{0, 1}));
  EXPECT_EQ(seen[1].bundles[0], GoodSet{0});
  EXPECT_EQ(seen[2].bundles[0], GoodSet{1});
  EXPECT_EQ(seen[3].bundles[1], (GoodSet{0, 1}));
}

TEST(Oracle, BudgetExceeded) {
  const Instance inst = make({{1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1}});
  EXPECT_THROW(oracle::enumerate_complete(inst, {10}, [](const Allocation&) { return true; }), BudgetExceeded);
  EXPECT_THROW(oracle::exists_efx(inst, {10}), BudgetExceeded);
}

// 81 and 9 come from the independent Python enumeration.
TEST(Oracle, EfxCountAndDefinitionsAgree) {
  const Instance inst = three_by_four();
  std::size_t total = 0, efx = 0;
  oracle::enumerate_complete(inst, {}, [&](const Allocation& a) {
    ++total;
    const bool direct = oracle::efx_by_subsets(inst, a, Beta::kOne);
    EXPECT_EQ(direct, check_alpha_efx(inst, a, Beta::kOne).pass());
    EXPECT_EQ(oracle::efx_by_subsets(inst, a, Beta::kSqrt2), check_alpha_efx(inst, a, Beta::kSqrt2).pass());
    efx += direct;
    return true;
  });
  EXPECT_EQ(total, 81u);
  EXPECT_EQ(efx, 9u);
  const auto found = oracle::exists_efx(inst);
  ASSERT_TRUE(found.has_value());
  EXPECT_TRUE(check_alpha_efx(inst, *found, Beta::kOne).pass());
}

TEST(Oracle, MaxNsw) {
  const Allocation best = oracle::max_nsw_complete(three_by_four());
  EXPECT_EQ(best.bundles, (std::vector<GoodSet>{GoodSet{3}, GoodSet{0}, GoodSet{1, 2}}));
  const Potential p = potential(three_by_four(), best, PotentialTag::kNsw);
  EXPECT_EQ(p.coords.back(), Rational(64));
}

TEST(Oracle, BruteRankOnExample) {
  const auto r = oracle::brute_rank(example_4x7(), example_4x7_alloc(), 3);
  EXPECT_EQ(r.rank, Rational(10, 9));
  EXPECT_EQ(r.path, (std::vector<AgentId>{2, 3}));
}

TEST(Oracle, BruteRankMatchesComputeRanksOnTraceStates) {
  std::size_t compared = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenSpec spec{5, 9, Model::kAdditiveInfty1, 1, 10, std::nullopt, std::nullopt, seed};
    const Instance inst = generate(spec);
    const RunResult r = run_algorithm(inst, Algorithm::kSqrt2Pq);
    const Instance& local = r.reduction.instance;
    for (const auto& e : r.trace) {
      if (e.rule == "final") continue;
      const RankTable t = compute_ranks(EnvyGraph::build(local, e.allocation));
      for (AgentId i = 0; i < local.num_agents(); ++i) {
        const auto b = oracle::brute_rank(local, e.allocation, i);
        EXPECT_EQ(b.rank, t[i].rank) << seed << " agent " << i;
        EXPECT_EQ(b.path, t[i].path) << seed << " agent " << i;
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 100u);
}

TEST(Oracle, BruteRankAgreesOnRandomAllocations) {
  Xoshiro256 rng(5);
  std::size_t agreed = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = rng.uniform(2, 5), m = rng.uniform(n, n + 4);
    const Instance inst = generate({n, m, Model::kAdditivePq, 1, 6, 2, 2, rng.next()});
    Allocation a = Allocation::empty(inst);
    a.bundles.assign(n, {});
    a.pool = {};
    for (GoodId g = 0; g < m; ++g) {
      const auto owner = rng.uniform(0, n);
      if (owner == n) a.pool.insert(g);
      else a.bundles[owner].insert(g);
    }
    std::optional<RankTable> table;
    bool super = false, undefined = false;
    try {
      table = compute_ranks(EnvyGraph::build(inst, a));
    } catch (const SuperUnitCycle&) {
      super = true;
    } catch (const UndefinedWeight&) {
      undefined = true;
    }
    if (undefined) continue;
    for (AgentId i = 0; i < n; ++i) {
      if (super) {
        EXPECT_THROW(oracle::brute_rank(inst, a, i), SuperUnitCycle);
        break;
      }
      const auto b = oracle::brute_rank(inst, a, i);
      EXPECT_EQ(b.rank, (*table)[i].rank);
      EXPECT_EQ(b.path, (*table)[i].path);
    }
    ++agreed;
  }
  EXPECT_GT(agreed, 50u);
}

TEST(Oracle, MinimalSubsetsAgree) {
  Xoshiro256 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = generate({3, 7, Model::kAdditivePq, 1, 9, 3, 7, rng.next()});
    GoodSet s;
    for (GoodId g = 0; g < 7; ++g) {
      if (rng.uniform(0, 1)) s.insert(g);
    }
    const Rational threshold(static_cast<long>(rng.uniform(0, 12)));
    if (value(inst, 0, s) > threshold) {
      const GoodSet sub = minimal_subset_exceeding(inst, 0, s, threshold);
      EXPECT_TRUE(sub.subset_of(s));
      EXPECT_TRUE(oracle::is_minimal_exceeding(inst, 0, sub, threshold));
    } else {
      EXPECT_THROW(minimal_subset_exceeding(inst, 0, s, threshold), Infeasible);
    }
    const std::vector<Rational> thresholds{threshold, threshold + 2, threshold + 4};
    const auto env = minimal_envied_subset(inst, s, thresholds);
    if (env) {
      EXPECT_TRUE(env->subset.subset_of(s));
      EXPECT_TRUE(oracle::is_minimal_envied(inst, env->subset, thresholds));
    }
  }
}
