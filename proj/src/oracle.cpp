#include "fairdiv/oracle.hpp"

#include <algorithm>

#include "fairdiv/errors.hpp"
#include "fairdiv/graph.hpp"

namespace fairdiv::oracle {

namespace {

void check_budget(std::uint64_t base, std::size_t m, const EnumerationBudget& budget) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (base != 0 && total > budget.max_assignments / base) {
      throw BudgetExceeded(std::to_string(base) + "^" + std::to_string(m) + " assignments exceed the budget of " +
                           std::to_string(budget.max_assignments));
    }
    total *= base;
  }
  if (total > budget.max_assignments) throw BudgetExceeded("assignment count exceeds the budget");
}

void enumerate(const Instance& inst, std::size_t owners, bool with_pool,
               const std::function<bool(const Allocation&)>& visit) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_goods();
  if (owners == 0) return;
  std::vector<std::size_t> owner(m, 0);
  for (;;) {
    Allocation a;
    a.bundles.resize(n);
    for (GoodId g = 0; g < m; ++g) {
      if (with_pool && owner[g] == n) {
        a.pool.insert(g);
      } else {
        a.bundles[owner[g]].insert(g);
      }
    }
    if (!visit(a)) return;
    std::size_t k = m;
    while (k > 0 && owner[k - 1] + 1 == owners) owner[--k] = 0;
    if (k == 0) return;
    ++owner[k - 1];
  }
}

std::vector<GoodSet> strict_subsets(const GoodSet& s) {
  const auto& ids = s.ids();
  if (ids.size() > 20) throw InvalidInstance("subset enumeration limited to 20 goods");
  std::vector<GoodSet> out;
  const std::uint32_t full = (1u << ids.size()) - 1;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    std::vector<GoodId> pick;
    for (std::size_t b = 0; b < ids.size(); ++b) {
      if (mask & (1u << b)) pick.push_back(ids[b]);
    }
    out.emplace_back(std::move(pick));
  }
  return out;
}

// beta * own >= other, squared for sqrt2.
bool within(const Rational& own, Beta beta, const Rational& other) {
  switch (beta) {
    case Beta::kZero:
      return other <= 0;
    case Beta::kOne:
      return own >= other;
    case Beta::kSqrt2:
      return 2 * own * own >= other * other;
  }
  return false;
}

}  // namespace

void enumerate_complete(const Instance& inst, const EnumerationBudget& budget,
                        const std::function<bool(const Allocation&)>& visit) {
  check_budget(inst.num_agents(), inst.num_goods(), budget);
  enumerate(inst, inst.num_agents(), false, visit);
}

void enumerate_partial(const Instance& inst, const EnumerationBudget& budget,
                       const std::function<bool(const Allocation&)>& visit) {
  check_budget(inst.num_agents() + 1, inst.num_goods(), budget);
  enumerate(inst, inst.num_agents() + 1, true, visit);
}

bool efx_by_subsets(const Instance& inst, const Allocation& alloc, Beta beta) {
  const std::size_t n = inst.num_agents();
  for (AgentId j = 0; j < n; ++j) {
    const auto subsets = strict_subsets(alloc.bundles[j]);
    for (AgentId i = 0; i < n; ++i) {
      if (i == j) continue;
      const Rational own = value(inst, i, alloc.bundles[i]);
      for (const GoodSet& s : subsets) {
        if (!within(own, beta, value(inst, i, s))) return false;
      }
    }
  }
  return true;
}

std::optional<Allocation> exists_efx(const Instance& inst, const EnumerationBudget& budget) {
  std::optional<Allocation> found;
  enumerate_complete(inst, budget, [&](const Allocation& a) {
    if (efx_by_subsets(inst, a, Beta::kOne)) {
      found = a;
      return false;
    }
    return true;
  });
  return found;
}

BruteRank brute_rank(const Instance& inst, const Allocation& alloc, AgentId i) {
  const std::size_t n = inst.num_agents();
  if (n > 8) throw InvalidInstance("brute_rank is limited to 8 agents");
  const EnvyGraph g = EnvyGraph::build(inst, alloc);

  // All simple paths, as (product, vertices).
  std::vector<std::pair<Rational, std::vector<AgentId>>> paths;
  std::vector<AgentId> cur;
  std::vector<bool> used(n, false);
  std::function<void(AgentId, const Rational&)> extend = [&](AgentId u, const Rational& prod) {
    paths.emplace_back(prod, cur);
    for (AgentId v = 0; v < n; ++v) {
      const auto& w = g.weight(u, v);
      if (v == u || !w) continue;
      if (used[v]) {
        // Closing a cycle back to the path start.
        if (v == cur.front() && prod * *w > 1) throw SuperUnitCycle("cycle with product > 1");
        continue;
      }
      used[v] = true;
      cur.push_back(v);
      extend(v, prod * *w);
      cur.pop_back();
      used[v] = false;
    }
  };
  for (AgentId s = 0; s < n; ++s) {
    used[s] = true;
    cur = {s};
    extend(s, Rational(1));
    used[s] = false;
  }

  std::vector<Rational> rank(n, Rational(0));
  for (const auto& [prod, p] : paths) rank[p.back()] = std::max(rank[p.back()], prod);
  BruteRank best{rank[i], {}};
  for (const auto& [prod, p] : paths) {
    if (p.back() != i || prod != rank[i]) continue;
    const bool inner_above_one =
        std::all_of(p.begin() + 1, p.end(), [&](AgentId v) { return rank[v] > 1; });
    if (!inner_above_one) continue;
    if (best.path.empty() || p < best.path) best.path = p;
  }
  return best;
}

Allocation max_nsw_complete(const Instance& inst, const EnumerationBudget& budget) {
  std::optional<Allocation> best;
  std::size_t best_zeros = 0;
  Rational best_prod;
  enumerate_complete(inst, budget, [&](const Allocation& a) {
    std::size_t zeros = 0;
    Rational prod(1);
    for (AgentId i = 0; i < inst.num_agents(); ++i) {
      const Rational v = value(inst, i, a.bundles[i]);
      if (v == 0) {
        ++zeros;
      } else {
        prod *= v;
      }
    }
    if (!best || zeros < best_zeros || (zeros == best_zeros && prod > best_prod)) {
      best = a;
      best_zeros = zeros;
      best_prod = prod;
    }
    return true;
  });
  if (!best) throw InvalidInstance("no allocation to enumerate");
  return *best;
}

bool is_minimal_exceeding(const Instance& inst, AgentId i, const GoodSet& t, const Rational& threshold) {
  if (!(value(inst, i, t) > threshold)) return false;
  for (const GoodSet& s : strict_subsets(t)) {
    if (value(inst, i, s) > threshold) return false;
  }
  return true;
}

bool is_minimal_envied(const Instance& inst, const GoodSet& t, const std::vector<Rational>& thresholds) {
  bool envied = false;
  for (AgentId k = 0; k < inst.num_agents(); ++k) envied = envied || value(inst, k, t) > thresholds[k];
  if (!envied) return false;
  for (const GoodSet& s : strict_subsets(t)) {
    for (AgentId k = 0; k < inst.num_agents(); ++k) {
      if (value(inst, k, s) > thresholds[k]) return false;
    }
  }
  return true;
}

}  // namespace fairdiv::oracle
