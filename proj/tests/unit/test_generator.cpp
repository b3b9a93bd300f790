#include <gtest/gtest.h>

#include "fairdiv/errors.hpp"
#include "fairdiv/generator.hpp"

using namespace fairdiv;

// Frozen from the Python transcription in tests/support/derive_values.py.
TEST(Xoshiro, FirstOutputsSeedZero) {
  Xoshiro256 r(0);
  EXPECT_EQ(r.next(), 11091344671253066420ull);
  EXPECT_EQ(r.next(), 13793997310169335082ull);
  EXPECT_EQ(r.next(), 1900383378846508768ull);
}

TEST(Xoshiro, FirstOutputsSeedSeven) {
  Xoshiro256 r(7);
  EXPECT_EQ(r.next(), 12923355070828475994ull);
  EXPECT_EQ(r.next(), 5142052590334782674ull);
  EXPECT_EQ(r.next(), 15488392906492639638ull);
}

TEST(Xoshiro, UniformStaysInRangeAndHitsBothEnds) {
  Xoshiro256 r(42);
  bool lo = false, hi = false;
  for (int k = 0; k < 2000; ++k) {
    const auto x = r.uniform(3, 9);
    ASSERT_GE(x, 3u);
    ASSERT_LE(x, 9u);
    lo |= x == 3;
    hi |= x == 9;
  }
  EXPECT_TRUE(lo && hi);
  EXPECT_EQ(r.uniform(5, 5), 5u);
  Xoshiro256 full(1);
  (void)full.uniform(0, ~0ull);
}

TEST(Generator, ModelNames) {
  for (Model m : {Model::kRestrictedP2, Model::kRestrictedAny, Model::kAdditiveInfty1, Model::kAdditivePq}) {
    EXPECT_EQ(parse_model(model_name(m)), m);
  }
  EXPECT_EQ(model_name(Model::kRestrictedP2), "restricted_p2");
  EXPECT_FALSE(parse_model("general").has_value());
}

TEST(Generator, DeterministicInSeed) {
  GenSpec s{7, 13, Model::kRestrictedAny, 1, 10, std::nullopt, std::nullopt, 99};
  EXPECT_EQ(generate(s), generate(s));
  GenSpec t = s;
  t.seed = 100;
  EXPECT_FALSE(generate(s) == generate(t));
}

TEST(Generator, ClassesHold) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 7, m = n + seed % 9;
    {
      const Instance inst = generate({n, m, Model::kRestrictedP2, 1, 10, std::nullopt, std::nullopt, seed});
      ASSERT_TRUE(inst.restricted().has_value());
      EXPECT_EQ(check_restricted_additive(inst), inst.restricted());
      EXPECT_LE(classify_bounds(inst).p, 2u);
      for (GoodId g = 0; g < n; ++g) EXPECT_TRUE(inst.relevant(g, g));
      for (GoodId g = 0; g < m; ++g) {
        for (AgentId i = 0; i < n; ++i) {
          if (inst.relevant(i, g)) {
            EXPECT_GE(inst.value(i, g), Rational(1));
            EXPECT_LE(inst.value(i, g), Rational(10));
          }
        }
      }
    }
    {
      const Instance inst = generate({n, m, Model::kAdditiveInfty1, 1, 10, std::nullopt, std::nullopt, seed});
      EXPECT_LE(classify_bounds(inst).q, 1u);
      for (GoodId g = 0; g < n; ++g) EXPECT_TRUE(inst.relevant(g, g));
    }
    {
      const Instance inst = generate({n, m, Model::kAdditivePq, 1, 10, 3, 2, seed});
      EXPECT_LE(classify_bounds(inst).p, 3u);
      EXPECT_LE(classify_bounds(inst).q, 2u);
    }
    {
      const Instance inst = generate({n, m, Model::kRestrictedAny, 1, 10, std::nullopt, std::nullopt, seed});
      EXPECT_TRUE(check_restricted_additive(inst).has_value());
    }
  }
}

TEST(Generator, InfeasibleSpecs) {
  auto bad = [](GenSpec s) { EXPECT_THROW(generate(s), InfeasibleSpec); };
  bad({0, 3, Model::kRestrictedP2});
  bad({3, 0, Model::kRestrictedP2});
  bad({3, 3, Model::kRestrictedP2, 0, 10});
  bad({3, 3, Model::kRestrictedP2, 5, 4});
  bad({3, 3, Model::kRestrictedP2, 1, 10, 3});
  bad({3, 3, Model::kAdditiveInfty1, 1, 10, std::nullopt, 2});
  bad({3, 3, Model::kAdditivePq, 1, 10, 0});
}
