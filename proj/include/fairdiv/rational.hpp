#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace fairdiv {

// Exact rational backed by GMP's mpq_t. Always canonical (lowest terms,
// positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Thresholds used by the envy-graph views and the strong-envy checks.
// kSqrt2 is never materialised; comparisons against it square both sides.
enum class Beta { kZero, kOne, kSqrt2 };

std::string to_string(const Rational& r);
std::string to_string(Beta b);

// Accepts "123" or "p/q" with q > 0. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// lhs > beta * rhs, for lhs, rhs >= 0.
bool exceeds(const Rational& lhs, Beta beta, const Rational& rhs);

// Number of bits in the larger of numerator and denominator.
std::size_t bit_length(const Rational& r);

}  // namespace fairdiv
