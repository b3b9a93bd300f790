#include <gtest/gtest.h>

#include "fairdiv/rational.hpp"

using namespace fairdiv;

TEST(Rational, ToStringIntegerAndFraction) {
  EXPECT_EQ(to_string(Rational(12)), "12");
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(Beta::kSqrt2), "sqrt2");
}

TEST(Rational, ParseCanonicalises) {
  EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("123456789012345678901234567890"),
            Rational(Integer("123456789012345678901234567890")));
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "-1", "1/0", "1.5", "a/2", "3/", "/3", "1/2/3", " 1"}) {
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, ExceedsSqrt2BySquaring) {
  // 3 > sqrt2 * 2  <=>  9 > 8
  EXPECT_TRUE(exceeds(Rational(3), Beta::kSqrt2, Rational(2)));
  // 7/5 < sqrt2
  EXPECT_FALSE(exceeds(Rational(7, 5), Beta::kSqrt2, Rational(1)));
  EXPECT_TRUE(exceeds(Rational(3, 2), Beta::kSqrt2, Rational(1)));
  EXPECT_FALSE(exceeds(Rational(1), Beta::kOne, Rational(1)));
  EXPECT_TRUE(exceeds(Rational(1, 100), Beta::kZero, Rational(5)));
  EXPECT_FALSE(exceeds(Rational(0), Beta::kZero, Rational(5)));
}

TEST(Rational, BitLength) {
  EXPECT_EQ(bit_length(Rational(0)), 1u);  // denominator 1
  EXPECT_EQ(bit_length(Rational(1)), 1u);
  EXPECT_EQ(bit_length(Rational(255)), 8u);
  EXPECT_EQ(bit_length(Rational(3, 1024)), 11u);
}
