#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/graph.hpp"

namespace fairdiv {

// One failed condition. For pairwise checks (i, j) is the envier/envied pair and
// `witness` the removed good(s). Margins are exact:
//   beta 0/1:   v_i(X_j \ W) - beta * v_i(X_i)
//   beta sqrt2: v_i(X_j \ W)^2 - 2 * v_i(X_i)^2
//   virtual:    v_i(X_j \ W) - virtual_value(i)
// Per-agent property failures use j == i and margin 0.
struct Violation {
  AgentId i = 0;
  AgentId j = 0;
  std::vector<GoodId> witness;
  Rational margin;
  std::string what;
};

struct FairnessReport {
  std::vector<Violation> violations;
  // Filled by the "uparrow" property only: the agent sharing X_i's type.
  std::vector<std::optional<AgentId>> corresponding;

  bool pass() const { return violations.empty(); }
};

struct StrongEnvy {
  GoodId witness;  // the least valuable good of X_j for i (lowest index on ties)
  Rational margin;
};

// Present iff some g in X_j has beta * v_i(X_i) < v_i(X_j \ {g}). With additive
// values the least valuable good decides. Singleton and empty X_j never count.
std::optional<StrongEnvy> beta_strong_envy(const Instance& inst, const Allocation& alloc, AgentId i,
                                           AgentId j, Beta beta);

FairnessReport check_alpha_efx(const Instance& inst, const Allocation& alloc, Beta beta);
FairnessReport check_ef2x(const Instance& inst, const Allocation& alloc);
// Pairs restricted to `scope` when given (i == j included).
FairnessReport check_virtual_efx(const Instance& inst, const Allocation& alloc, const RankTable& ranks,
                                 const std::vector<bool>* scope = nullptr);

struct PropertyContext {
  std::vector<bool> remaining;  // empty = every agent
};

// Names: "ddagger", "section", "dagger", "uparrow". Throws UnknownProperty.
FairnessReport check_named_property(const Instance& inst, const Allocation& alloc, std::string_view name,
                                    const PropertyContext& ctx = {});
const std::vector<std::string>& property_names();

enum class PotentialTag { kCxxra, kSources, kPqrax, kNsw };

struct Potential {
  PotentialTag tag = PotentialTag::kCxxra;
  // cxxra:   {welfare, allocated goods}
  // sources: ascending source values; the +inf terminator is implicit
  // nsw:     {-zero factors, product of non-zero factors}
  // pqrax:   {satisfied agents, -zero factors, product of non-zero factors}
  std::vector<Rational> coords;

  // Exact coordinates as strings; sources append "inf".
  std::vector<std::string> describe() const;
};

Potential potential(const Instance& inst, const Allocation& alloc, PotentialTag tag,
                    const PropertyContext& ctx = {});
std::strong_ordering compare(const Potential& a, const Potential& b);

}  // namespace fairdiv
