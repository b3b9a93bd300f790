#include "fairdiv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fairdiv {

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(Beta b) {
  switch (b) {
    case Beta::kZero: return "0";
    case Beta::kOne: return "1";
    case Beta::kSqrt2: return "sqrt2";
  }
  return "?";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not a non-negative rational: '" + std::string(text) + "'");
  }
  Integer d(std::string(den).c_str());
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Integer n(std::string(num).c_str());
  return Rational(n, d);
}

bool exceeds(const Rational& lhs, Beta beta, const Rational& rhs) {
  switch (beta) {
    case Beta::kZero: return lhs > 0;
    case Beta::kOne: return lhs > rhs;
    case Beta::kSqrt2: return lhs * lhs > 2 * rhs * rhs;
  }
  return false;
}

std::size_t bit_length(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  std::size_t a = num == 0 ? 0 : boost::multiprecision::msb(num) + 1;
  std::size_t b = boost::multiprecision::msb(den) + 1;
  return a > b ? a : b;
}

}  // namespace fairdiv
