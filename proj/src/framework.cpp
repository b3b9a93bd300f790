#include "fairdiv/framework.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "fairdiv/graph.hpp"

namespace fairdiv {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Kuhn's augmenting paths over alive agents/goods, both in ascending order.
struct Matching {
  std::vector<std::size_t> good_of_agent;
  std::vector<std::size_t> agent_of_good;
};

Matching max_matching(const Instance& inst, const std::vector<bool>& agent_alive,
                      const std::vector<bool>& good_alive) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_goods();
  Matching mt{std::vector<std::size_t>(n, kNone), std::vector<std::size_t>(m, kNone)};
  std::vector<char> seen(m);
  std::function<bool(AgentId)> augment = [&](AgentId a) {
    for (GoodId g = 0; g < m; ++g) {
      if (!good_alive[g] || seen[g] || !inst.relevant(a, g)) continue;
      seen[g] = 1;
      if (mt.agent_of_good[g] == kNone || augment(mt.agent_of_good[g])) {
        mt.agent_of_good[g] = a;
        mt.good_of_agent[a] = g;
        return true;
      }
    }
    return false;
  };
  for (AgentId a = 0; a < n; ++a) {
    if (!agent_alive[a]) continue;
    std::fill(seen.begin(), seen.end(), 0);
    augment(a);
  }
  return mt;
}

}  // namespace

SeedResult seed_allocation(const Instance& inst) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_goods();
  SeedResult out;
  out.allocation = Allocation::empty(inst);
  std::vector<bool> agent_alive(n, true);
  std::vector<bool> good_alive(m, true);
  Matching mt;
  for (;;) {
    mt = max_matching(inst, agent_alive, good_alive);
    // Alternating reachability from unmatched agents gives the deficient set.
    std::vector<bool> in_nc(n, false);
    std::vector<bool> in_mc(m, false);
    std::deque<AgentId> queue;
    for (AgentId a = 0; a < n; ++a) {
      if (agent_alive[a] && mt.good_of_agent[a] == kNone) {
        in_nc[a] = true;
        queue.push_back(a);
      }
    }
    if (queue.empty()) break;
    while (!queue.empty()) {
      AgentId a = queue.front();
      queue.pop_front();
      for (GoodId g = 0; g < m; ++g) {
        if (!good_alive[g] || in_mc[g] || !inst.relevant(a, g)) continue;
        in_mc[g] = true;
        AgentId b = mt.agent_of_good[g];
        if (b == kNone) throw InvariantViolated("augmenting path left in a maximum matching");
        if (!in_nc[b]) {
          in_nc[b] = true;
          queue.push_back(b);
        }
      }
    }
    ++out.hall_rounds;
    for (GoodId g = 0; g < m; ++g) {
      if (!in_mc[g]) continue;
      const AgentId b = mt.agent_of_good[g];
      out.prematched.emplace_back(b, g);
      out.allocation.bundles[b].insert(g);
      out.allocation.pool.erase(g);
      out.removed_goods.push_back(g);
      good_alive[g] = false;
    }
    for (AgentId a = 0; a < n; ++a) {
      if (in_nc[a]) {
        out.removed_agents.push_back(a);
        agent_alive[a] = false;
      }
    }
  }
  std::sort(out.prematched.begin(), out.prematched.end());
  std::sort(out.removed_agents.begin(), out.removed_agents.end());
  std::sort(out.removed_goods.begin(), out.removed_goods.end());

  for (AgentId a = 0; a < n; ++a) {
    if (!agent_alive[a]) continue;
    out.allocation.bundles[a] = GoodSet{mt.good_of_agent[a]};
    out.allocation.pool.erase(mt.good_of_agent[a]);
  }
  // Rotate along super-unit cycles; each rotation raises the value product.
  for (;;) {
    const EnvyGraph g = EnvyGraph::build(inst, out.allocation, agent_alive);
    const auto cycle = super_unit_cycle(g);
    if (!cycle) break;
    std::vector<GoodSet> moved;
    for (std::size_t k = 0; k < cycle->size(); ++k) {
      moved.push_back(out.allocation.bundles[(*cycle)[(k + 1) % cycle->size()]]);
    }
    for (std::size_t k = 0; k < cycle->size(); ++k) out.allocation.bundles[(*cycle)[k]] = moved[k];
  }
  check_partition(inst, out.allocation);
  return out;
}

Reduction reduce(const Instance& inst, const SeedResult& seed) {
  Reduction red;
  std::vector<bool> removed_agent(inst.num_agents(), false);
  std::vector<bool> removed_good(inst.num_goods(), false);
  for (AgentId a : seed.removed_agents) removed_agent[a] = true;
  for (GoodId g : seed.removed_goods) removed_good[g] = true;
  std::vector<std::size_t> local_good(inst.num_goods(), kNone);
  for (AgentId a = 0; a < inst.num_agents(); ++a) {
    if (!removed_agent[a]) red.agent_of.push_back(a);
  }
  for (GoodId g = 0; g < inst.num_goods(); ++g) {
    if (!removed_good[g]) {
      local_good[g] = red.good_of.size();
      red.good_of.push_back(g);
    }
  }
  std::vector<std::vector<Rational>> table;
  for (AgentId a : red.agent_of) {
    std::vector<Rational> row;
    for (GoodId g : red.good_of) row.push_back(inst.value(a, g));
    table.push_back(std::move(row));
  }
  red.instance = Instance(std::move(table));
  red.seed.bundles.resize(red.agent_of.size());
  for (std::size_t k = 0; k < red.agent_of.size(); ++k) {
    for (GoodId g : seed.allocation.bundles[red.agent_of[k]]) red.seed.bundles[k].insert(local_good[g]);
  }
  for (GoodId g : seed.allocation.pool) red.seed.pool.insert(local_good[g]);
  return red;
}

Allocation lift(const Instance& inst, const SeedResult& seed, const Reduction& red, const Allocation& local) {
  Allocation out;
  out.bundles.resize(inst.num_agents());
  for (auto [a, g] : seed.prematched) out.bundles[a].insert(g);
  for (std::size_t k = 0; k < local.bundles.size(); ++k) {
    for (GoodId g : local.bundles[k]) out.bundles[red.agent_of[k]].insert(red.good_of[g]);
  }
  for (GoodId g : local.pool) out.pool.insert(red.good_of[g]);
  if (red.agent_of.empty() && !out.pool.empty()) {
    // Only goods nobody values can be left here; park them where nobody looks.
    for (AgentId a : seed.removed_agents) {
      if (out.bundles[a].empty()) {
        out.bundles[a] = out.pool;
        out.pool = GoodSet{};
        break;
      }
    }
  }
  check_partition(inst, out);
  return out;
}

Allocation resolve_envy_cycles(const Instance& inst, Allocation alloc) {
  for (;;) {
    const Digraph view = threshold_view(inst, alloc, Beta::kOne);
    const auto cycle = find_cycle(view);
    if (!cycle) return alloc;
    const std::size_t len = cycle->size();
    std::vector<GoodSet> before;
    for (AgentId a : *cycle) before.push_back(alloc.bundles[a]);
    for (std::size_t k = 0; k < len; ++k) {
      const AgentId i = (*cycle)[k];
      const GoodSet& target = before[(k + 1) % len];
      GoodSet keep = relevant_set(inst, target, i);
      alloc.pool = alloc.pool.united(target.minus(keep));
      alloc.bundles[i] = std::move(keep);
    }
  }
}

Allocation envy_elimination(const Instance& inst, Allocation alloc,
                            const std::function<void(const Allocation&)>& on_step) {
  const std::size_t n = inst.num_agents();
  for (;;) {
    bool moved = false;
    for (AgentId i = 0; i < n && !moved; ++i) {
      const Rational own = value(inst, i, alloc.bundles[i]);
      for (AgentId j = 0; j < n && !moved; ++j) {
        if (i == j) continue;
        const GoodSet& xj = alloc.bundles[j];
        const Rational total = value(inst, i, xj);
        for (GoodId g : xj) {
          if (exceeds(total - inst.value(i, g), Beta::kSqrt2, own)) {
            alloc.bundles[j].erase(g);
            alloc.pool.insert(g);
            moved = true;
            break;
          }
        }
      }
    }
    if (!moved) return alloc;
    if (on_step) on_step(alloc);
  }
}

std::optional<EnviedSubset> minimal_envied_subset(const Instance& inst, const GoodSet& s,
                                                  const std::vector<Rational>& thresholds) {
  const std::size_t n = inst.num_agents();
  auto envied = [&](const GoodSet& t) {
    for (AgentId k = 0; k < n; ++k) {
      if (value(inst, k, t) > thresholds[k]) return true;
    }
    return false;
  };
  if (!envied(s)) return std::nullopt;
  GoodSet t = s;
  for (bool changed = true; changed;) {
    changed = false;
    for (GoodId g : GoodSet(t)) {
      GoodSet smaller = t.without(g);
      if (envied(smaller)) {
        t = std::move(smaller);
        changed = true;
      }
    }
  }
  for (AgentId k = 0; k < n; ++k) {
    if (value(inst, k, t) > thresholds[k]) return EnviedSubset{k, t};
  }
  return std::nullopt;
}

std::optional<EnviedSubset> most_envious_agent(const Instance& inst, const Allocation& alloc, const GoodSet& s) {
  std::vector<Rational> own;
  for (AgentId k = 0; k < inst.num_agents(); ++k) own.push_back(value(inst, k, alloc.bundles[k]));
  return minimal_envied_subset(inst, s, own);
}

GoodSet minimal_subset_exceeding(const Instance& inst, AgentId i, const GoodSet& s, const Rational& threshold) {
  if (value(inst, i, s) <= threshold) {
    throw Infeasible("agent " + std::to_string(i) + " values " + to_string(s) + " at most " +
                     to_string(threshold));
  }
  GoodSet t = s;
  for (bool changed = true; changed;) {
    changed = false;
    for (GoodId g : t) {
      if (value(inst, i, t) - inst.value(i, g) > threshold) {
        t.erase(g);
        changed = true;
        break;
      }
    }
  }
  return t;
}

std::size_t default_step_limit(const Instance& inst) {
  return 16 * std::max<std::size_t>(inst.num_agents(), 1) * std::max<std::size_t>(inst.num_goods(), 1) *
         (1 + max_value_bits(inst));
}

}  // namespace fairdiv
