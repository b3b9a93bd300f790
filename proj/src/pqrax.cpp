#include <algorithm>

#include "algo_util.hpp"
#include "fairdiv/algorithms.hpp"

namespace fairdiv::pqrax {

namespace {

using detail::require;

RankTable ranks_on(const Instance& inst, const State& s) {
  return compute_ranks(EnvyGraph::build(inst, s.allocation, s.remaining));
}

std::size_t remaining_count(const State& s) {
  return static_cast<std::size_t>(std::count(s.remaining.begin(), s.remaining.end(), true));
}

// Relevance set shared by every good of the bundle, if there is one.
std::optional<std::vector<AgentId>> bundle_type(const Instance& inst, const GoodSet& bundle) {
  if (bundle.empty()) return std::nullopt;
  const auto& type = inst.relevant_agents(*bundle.begin());
  for (GoodId g : bundle) {
    if (inst.relevant_agents(g) != type) return std::nullopt;
  }
  return type;
}

}  // namespace

std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s) {
  const RankTable ranks = ranks_on(inst, s);
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    if (!s.remaining[i] || ranks[i].rank != 1) continue;
    const auto type = bundle_type(inst, s.allocation.bundles[i]);
    if (!type) continue;
    for (GoodId g : s.allocation.pool) {
      if (inst.relevant_agents(g) != *type) continue;
      const GoodSet& own = s.allocation.bundles[i];
      State next = s;
      const GoodSet grown = own.with(g);
      next.allocation.bundles[i] = minimal_subset_exceeding(inst, i, grown, value(inst, i, own));
      next.allocation.pool = next.allocation.pool.without(g).united(grown.minus(next.allocation.bundles[i]));
      return RuleOutcome<State>{std::move(next), {i}, {g}, {}};
    }
  }
  return std::nullopt;
}

std::optional<RuleOutcome<State>> rule2(const Instance& inst, const State& s) {
  const RankTable ranks = ranks_on(inst, s);
  const std::size_t n = inst.num_agents();
  std::optional<std::pair<AgentId, AgentId>> best;
  for (AgentId r = 0; r < n; ++r) {
    if (!s.remaining[r]) continue;
    if (best && ranks[r].virtual_value >= ranks[best->first].virtual_value) continue;
    for (AgentId p = 0; p < n; ++p) {
      const GoodSet slice = typed_slice(inst, s.allocation.pool, r, p);
      if (value(inst, r, slice) > ranks[r].virtual_value) {
        best = std::make_pair(r, p);
        break;
      }
    }
  }
  if (!best) return std::nullopt;
  const auto [r, partner] = *best;
  const GoodSet slice = typed_slice(inst, s.allocation.pool, r, partner);
  const GoodSet taken = minimal_subset_exceeding(inst, r, slice, ranks[r].virtual_value);
  const auto& path = ranks[r].path;
  State next = s;
  const GoodSet returned = detail::shift_along(next.allocation, path);
  next.allocation.bundles[r] = taken;
  next.allocation.pool = next.allocation.pool.minus(taken).united(returned);
  return RuleOutcome<State>{std::move(next), path, taken.ids(), {}};
}

std::optional<RuleOutcome<State>> rule3(const Instance& inst, const State& s) {
  if (remaining_count(s) < 2) return std::nullopt;
  const std::size_t n = inst.num_agents();
  for (AgentId i = 0; i < n; ++i) {
    if (!s.remaining[i]) continue;
    bool isolated = true;
    for (AgentId j = 0; j < n && isolated; ++j) {
      isolated = j == i || !s.remaining[j] || value(inst, i, s.allocation.bundles[j]) == 0;
    }
    if (!isolated) continue;
    State next = s;
    Allocation& a = next.allocation;
    const GoodSet offer = relevant_set(inst, a.pool, i);
    if (value(inst, i, offer) > value(inst, i, a.bundles[i])) {
      a.pool = a.pool.minus(offer).united(a.bundles[i]);
      a.bundles[i] = offer;
    }
    next.remaining[i] = false;
    return RuleOutcome<State>{std::move(next), {i}, offer.ids(), {}};
  }
  return std::nullopt;
}

std::optional<RuleOutcome<State>> rule4(const Instance& inst, const State& s) {
  if (remaining_count(s) < 2) return std::nullopt;
  const std::size_t n = inst.num_agents();
  const Allocation& a = s.allocation;
  std::vector<std::vector<AgentId>> out(n);
  std::vector<std::size_t> in_deg(n, 0);
  for (AgentId i = 0; i < n; ++i) {
    if (!s.remaining[i]) continue;
    for (AgentId j = 0; j < n; ++j) {
      if (j != i && s.remaining[j] && value(inst, i, a.bundles[j]) > 0) {
        out[i].push_back(j);
        ++in_deg[j];
      }
    }
  }
  for (AgentId i = 0; i < n; ++i) {
    if (s.remaining[i]) {
      require(out[i].size() == 1 && in_deg[i] == 1,
              "pqrax rule4: G_0 on the remaining agents is not a union of disjoint cycles");
    }
  }
  const RankTable ranks = ranks_on(inst, s);
  std::optional<AgentId> pick;
  for (AgentId i = 0; i < n && !pick; ++i) {
    if (s.remaining[i] && ranks[i].rank == 1) pick = i;
  }
  require(pick.has_value(), "pqrax rule4: no remaining agent of rank 1");
  const AgentId i = *pick;
  std::vector<AgentId> cycle{i};
  for (AgentId v = out[i][0]; v != i; v = out[v][0]) cycle.push_back(v);

  State next = s;
  Allocation& b = next.allocation;
  const GoodSet offer = relevant_set(inst, a.pool, i);
  const GoodSet grown = a.bundles[i].united(offer);
  std::vector<GoodId> goods;
  if (value(inst, i, a.bundles[cycle[1]]) > value(inst, i, grown)) {
    for (std::size_t k = 0; k < cycle.size(); ++k) b.bundles[cycle[k]] = a.bundles[cycle[(k + 1) % cycle.size()]];
  } else {
    b.bundles[i] = grown;
    b.pool = b.pool.minus(offer);
    goods = offer.ids();
  }
  next.remaining[i] = false;
  return RuleOutcome<State>{std::move(next), cycle, std::move(goods), {}};
}

RuleOutcome<State> final_step(const Instance& inst, const State& s, bool checked) {
  State next = s;
  std::optional<AgentId> last;
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    if (s.remaining[i]) last = i;
  }
  if (checked) require(remaining_count(s) == 1, "pqrax final: more than one agent remains");
  require(last.has_value(), "pqrax final: no agent remains");
  std::vector<GoodId> goods = next.allocation.pool.ids();
  next.allocation.bundles[*last] = next.allocation.bundles[*last].united(next.allocation.pool);
  next.allocation.pool = GoodSet{};
  next.remaining[*last] = false;
  return RuleOutcome<State>{std::move(next), {*last}, std::move(goods), {}};
}

Potential potential_of(const Instance& inst, const State& s) {
  return potential(inst, s.allocation, PotentialTag::kPqrax, PropertyContext{s.remaining});
}

std::vector<Rule<State>> rules(const Instance& inst, bool checked) {
  using Fn = std::optional<RuleOutcome<State>> (*)(const Instance&, const State&);
  const std::vector<std::pair<std::string, Fn>> table{{"rule1", rule1}, {"rule2", rule2}, {"rule3", rule3},
                                                      {"rule4", rule4}};
  std::vector<Rule<State>> out;
  for (const auto& [name, fn] : table) {
    out.push_back(Rule<State>{name, [&inst, checked, fn, name = name](const State& s) {
                                if (!checked) return fn(inst, s);
                                const RankTable before = ranks_on(inst, s);
                                auto o = fn(inst, s);
                                if (!o) return o;
                                const State& after = o->next;
                                check_partition(inst, after.allocation);
                                if (name == "rule2") {
                                  // Agents are the receiver's rankpath, goods what it received.
                                  const AgentId r = o->agents.back();
                                  const Rational ratio =
                                      value(inst, r, GoodSet(o->goods)) / before[r].virtual_value;
                                  const EnvyGraph g = EnvyGraph::build(inst, after.allocation, after.remaining);
                                  require(feasible_rank_bound_check(g, sqrt2_pq::rank_bound(before, o->agents, ratio)),
                                          "pqrax rule2: rank bound is not LP-feasible");
                                }
                                const RankTable now = ranks_on(inst, after);
                                for (AgentId k = 0; k < inst.num_agents(); ++k) {
                                  if (!after.remaining[k]) continue;
                                  require(now[k].virtual_value >= before[k].virtual_value,
                                          "pqrax " + name + ": virtual value of agent " + std::to_string(k) +
                                              " decreased");
                                }
                                auto up = check_named_property(inst, after.allocation, "uparrow",
                                                               PropertyContext{after.remaining});
                                require(up.pass(), "pqrax " + name + ": " +
                                                       (up.pass() ? "" : up.violations.front().what));
                                return o;
                              }});
  }
  return out;
}

}  // namespace fairdiv::pqrax
