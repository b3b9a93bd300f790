#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv::oracle {

struct EnumerationBudget {
  std::uint64_t max_assignments = 2'000'000;
};

// Visitor returns false to stop early. Order: owner of good 0 is the most
// significant digit, owners ascend; in partial enumeration owner n is the pool.
// Both throw BudgetExceeded when n^m (resp. (n+1)^m) exceeds the budget.
void enumerate_complete(const Instance& inst, const EnumerationBudget& budget,
                        const std::function<bool(const Allocation&)>& visit);
void enumerate_partial(const Instance& inst, const EnumerationBudget& budget,
                       const std::function<bool(const Allocation&)>& visit);

// Direct reading of the definition: for every strict subset S of X_j,
// beta * v_i(X_i) >= v_i(S). Bundles above 20 goods are rejected.
bool efx_by_subsets(const Instance& inst, const Allocation& alloc, Beta beta);

std::optional<Allocation> exists_efx(const Instance& inst, const EnumerationBudget& budget = {});

struct BruteRank {
  Rational rank;
  std::vector<AgentId> path;
};

// Every simple path ending at i; n <= 8. Same tie-breaks as compute_ranks.
// Throws SuperUnitCycle.
BruteRank brute_rank(const Instance& inst, const Allocation& alloc, AgentId i);

// Fewest zero factors first, then largest product; first in enumeration order.
Allocation max_nsw_complete(const Instance& inst, const EnumerationBudget& budget = {});

// v_i(t) > threshold and no strict subset of t exceeds it.
bool is_minimal_exceeding(const Instance& inst, AgentId i, const GoodSet& t, const Rational& threshold);

// Some agent k has v_k(t) > thresholds[k], and no strict subset of t is
// valued above the threshold by anyone.
bool is_minimal_envied(const Instance& inst, const GoodSet& t, const std::vector<Rational>& thresholds);

}  // namespace fairdiv::oracle
