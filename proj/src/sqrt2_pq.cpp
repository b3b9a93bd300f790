#include <algorithm>

#include "algo_util.hpp"
#include "fairdiv/algorithms.hpp"

namespace fairdiv::sqrt2_pq {

namespace {

using detail::require;

struct Pick {
  AgentId receiver;
  GoodSet subset;
  Rational ratio;
  RankTable ranks;
};

std::optional<Pick> pick(const Instance& inst, const Allocation& a) {
  if (a.pool.empty()) return std::nullopt;
  const EnvyGraph g = EnvyGraph::build(inst, a);
  RankTable ranks = compute_ranks(g);
  std::vector<Rational> virt;
  for (const auto& e : ranks) virt.push_back(e.virtual_value);
  auto hat = minimal_envied_subset(inst, a.pool, virt);
  if (!hat) return std::nullopt;
  std::optional<AgentId> best;
  Rational best_ratio;
  for (AgentId k = 0; k < inst.num_agents(); ++k) {
    Rational ratio = value(inst, k, hat->subset) / virt[k];
    if (!best || ratio > best_ratio) {
      best = k;
      best_ratio = ratio;
    }
  }
  return Pick{*best, hat->subset, best_ratio, std::move(ranks)};
}

}  // namespace

std::vector<Rational> rank_bound(const RankTable& before, const std::vector<AgentId>& path, const Rational& ratio) {
  std::vector<Rational> bound;
  for (const auto& e : before) bound.push_back(e.rank);
  for (std::size_t q = 0; q + 1 < path.size(); ++q) bound[path[q]] = before[path[q + 1]].rank;
  bound[path.back()] = ratio;
  return bound;
}

std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s) {
  auto p = pick(inst, s.allocation);
  if (!p) return std::nullopt;
  const auto& path = p->ranks[p->receiver].path;
  Allocation next = s.allocation;
  const GoodSet returned = detail::shift_along(next, path);
  next.bundles[p->receiver] = p->subset;
  next.pool = next.pool.minus(p->subset).united(returned);
  return RuleOutcome<State>{State{std::move(next)}, path, p->subset.ids(), {}};
}

RuleOutcome<State> final_step(const Instance& inst, const State& s, bool) {
  Allocation next = s.allocation;
  if (next.pool.empty()) return RuleOutcome<State>{State{next}, {}, {}, {}};
  const RankTable ranks = compute_ranks(EnvyGraph::build(inst, next));
  std::optional<AgentId> base;
  for (AgentId i = 0; i < inst.num_agents() && !base; ++i) {
    if (ranks[i].rank == 1) base = i;
  }
  require(base.has_value(), "sqrt2-pq final: no agent of rank 1");
  std::vector<AgentId> agents;
  std::vector<GoodId> goods = next.pool.ids();
  for (AgentId k = 0; k < inst.num_agents(); ++k) {
    if (k == *base || ranks[k].rank * ranks[k].rank > 2) continue;
    const GoodSet take = relevant_set(inst, next.pool, k);
    if (take.empty()) continue;
    next.bundles[k] = next.bundles[k].united(take);
    next.pool = next.pool.minus(take);
    agents.push_back(k);
  }
  next.bundles[*base] = next.bundles[*base].united(next.pool);
  next.pool = GoodSet{};
  agents.push_back(*base);
  return RuleOutcome<State>{State{std::move(next)}, std::move(agents), std::move(goods), {}};
}

Potential potential_of(const Instance& inst, const State& s) {
  return potential(inst, s.allocation, PotentialTag::kNsw);
}

std::vector<Rule<State>> rules(const Instance& inst, bool checked) {
  std::vector<Rule<State>> out;
  out.push_back(Rule<State>{"rule1", [&inst, checked](const State& s) -> std::optional<RuleOutcome<State>> {
                              if (!checked) return rule1(inst, s);
                              auto p = pick(inst, s.allocation);
                              auto o = rule1(inst, s);
                              if (!o) return o;
                              const Allocation& after = o->next.allocation;
                              check_partition(inst, after);
                              const EnvyGraph g = EnvyGraph::build(inst, after);
                              const auto bound = rank_bound(p->ranks, o->agents, p->ratio);
                              require(feasible_rank_bound_check(g, bound),
                                      "sqrt2-pq rule1: rank bound is not LP-feasible");
                              const RankTable now = compute_ranks(g);
                              for (AgentId k = 0; k < inst.num_agents(); ++k) {
                                require(now[k].virtual_value >= p->ranks[k].virtual_value,
                                        "sqrt2-pq rule1: virtual value of agent " + std::to_string(k) +
                                            " decreased");
                              }
                              auto dag = check_named_property(inst, after, "dagger");
                              require(dag.pass(),
                                      "sqrt2-pq rule1: " + (dag.pass() ? "" : dag.violations.front().what));
                              return o;
                            }});
  return out;
}

}  // namespace fairdiv::sqrt2_pq
