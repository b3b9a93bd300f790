#pragma once

#include <string>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/graph.hpp"

namespace fairdiv::detail {

// Along path a_0 -> ... -> a_r every a_q takes a_{q+1}'s bundle. Returns a_0's
// old bundle; a_r is left empty for the caller to fill.
inline GoodSet shift_along(Allocation& alloc, const std::vector<AgentId>& path) {
  GoodSet first = alloc.bundles[path.front()];
  for (std::size_t q = 0; q + 1 < path.size(); ++q) alloc.bundles[path[q]] = alloc.bundles[path[q + 1]];
  alloc.bundles[path.back()] = GoodSet{};
  return first;
}

inline std::vector<Rational> own_values(const Instance& inst, const Allocation& alloc) {
  std::vector<Rational> out;
  for (AgentId i = 0; i < inst.num_agents(); ++i) out.push_back(value(inst, i, alloc.bundles[i]));
  return out;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolated(what);
}

}  // namespace fairdiv::detail
