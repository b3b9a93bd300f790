#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// xoshiro256** (Blackman and Vigna), state filled by splitmix64 from one
// 64-bit seed:
//   splitmix64: x += 0x9e3779b97f4a7c15; z = x;
//               z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
//               z = (z ^ (z >> 27)) * 0x94d049bb133111eb; return z ^ (z >> 31)
//   next:       r = rotl(s1 * 5, 7) * 9; t = s1 << 17; s2 ^= s0; s3 ^= s1;
//               s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  std::uint64_t next();
  // Uniform in [lo, hi] by rejection (no modulo bias).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

 private:
  std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& x);

enum class Model { kRestrictedP2, kRestrictedAny, kAdditiveInfty1, kAdditivePq };

std::string_view model_name(Model m);
std::optional<Model> parse_model(std::string_view name);

struct GenSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  Model model = Model::kRestrictedP2;
  std::uint64_t lo = 1;
  std::uint64_t hi = 10;
  std::optional<std::size_t> p;  // max agents per good
  std::optional<std::size_t> q;  // max shared goods per agent pair
  std::uint64_t seed = 0;
};

// Good g < n is always relevant to agent g. Restricted models carry their
// certificate. Throws InfeasibleSpec on inconsistent specs.
Instance generate(const GenSpec& spec);

}  // namespace fairdiv
