#include <algorithm>
#include <functional>
#include <map>

#include "algo_util.hpp"
#include "fairdiv/algorithms.hpp"

namespace fairdiv::cxxra {

namespace {

using detail::require;

RuleOutcome<State> settle(const Instance& inst, Allocation alloc, std::vector<AgentId> agents,
                          std::vector<GoodId> goods) {
  return RuleOutcome<State>{State{resolve_envy_cycles(inst, std::move(alloc))}, std::move(agents),
                            std::move(goods), {}};
}

// One link of a Rule-4 chain: source s gets good g; the most envious agent of
// X_s + g sits in the component of source `next`.
struct Link {
  AgentId source;
  GoodId good;
  AgentId target;
  GoodSet envied;
  std::size_t next;  // index into decomposition.sources
};

std::optional<Link> make_link(const Instance& inst, const Allocation& alloc, const SourceDecomposition& dec,
                              AgentId s, GoodId g) {
  auto me = most_envious_agent(inst, alloc, alloc.bundles[s].with(g));
  if (!me) return std::nullopt;
  return Link{s, g, me->agent, me->subset, dec.component_of[me->agent]};
}

// Constructive search: distinct lowest pool goods to sources with |C| >= 2,
// then to the remaining sources; follow source -> source-of-target.
std::optional<std::vector<Link>> constructive_cycle(const Instance& inst, const Allocation& alloc,
                                                    const SourceDecomposition& dec) {
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < dec.sources.size(); ++k) {
    if (dec.components[k].size() >= 2) order.push_back(k);
  }
  for (std::size_t k = 0; k < dec.sources.size(); ++k) {
    if (dec.components[k].size() < 2) order.push_back(k);
  }
  const auto& pool = alloc.pool.ids();
  const std::size_t bearing = std::min(order.size(), pool.size());
  std::vector<std::optional<Link>> link(dec.sources.size());
  for (std::size_t x = 0; x < bearing; ++x) {
    link[order[x]] = make_link(inst, alloc, dec, dec.sources[order[x]], pool[x]);
  }
  std::vector<std::size_t> starts(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(bearing));
  std::sort(starts.begin(), starts.end());
  for (std::size_t start : starts) {
    std::vector<std::size_t> walk;
    std::vector<int> pos(dec.sources.size(), -1);
    std::size_t cur = start;
    while (link[cur] && pos[cur] < 0) {
      pos[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      cur = link[cur]->next;
    }
    if (!link[cur] || pos[cur] < 0) continue;
    std::vector<Link> cycle;
    for (std::size_t t = static_cast<std::size_t>(pos[cur]); t < walk.size(); ++t) cycle.push_back(*link[walk[t]]);
    return cycle;
  }
  return std::nullopt;
}

// Exhaustive search over chains with distinct sources and goods.
std::optional<std::vector<Link>> exhaustive_cycle(const Instance& inst, const Allocation& alloc,
                                                  const SourceDecomposition& dec) {
  const std::size_t k = dec.sources.size();
  std::map<std::pair<std::size_t, GoodId>, std::optional<Link>> memo;
  auto link_of = [&](std::size_t src, GoodId g) -> const std::optional<Link>& {
    auto key = std::make_pair(src, g);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, make_link(inst, alloc, dec, dec.sources[src], g)).first;
    return it->second;
  };
  std::vector<Link> chain;
  std::vector<bool> used_src(k, false);
  GoodSet used_goods;
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t cur) -> bool {
    for (GoodId g : alloc.pool) {
      if (used_goods.contains(g)) continue;
      const auto& l = link_of(cur, g);
      if (!l) continue;
      chain.push_back(*l);
      if (l->next == start) return true;
      if (!used_src[l->next] && l->next > start) {
        used_src[l->next] = true;
        used_goods.insert(g);
        if (dfs(start, l->next)) return true;
        used_goods.erase(g);
        used_src[l->next] = false;
      }
      chain.pop_back();
    }
    return false;
  };
  for (std::size_t start = 0; start < k; ++start) {
    chain.clear();
    used_src.assign(k, false);
    used_goods = GoodSet{};
    used_src[start] = true;
    if (dfs(start, start)) return chain;
  }
  return std::nullopt;
}

std::vector<bool> source_flags(const Digraph& view) {
  const auto in = view.in_degrees();
  std::vector<bool> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] == 0;
  return out;
}

}  // namespace

std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s) {
  const Allocation& a = s.allocation;
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    const Rational own = value(inst, i, a.bundles[i]);
    for (GoodId g : a.pool) {
      if (inst.value(i, g) > own) {
        Allocation next = a;
        next.pool = next.pool.united(next.bundles[i]).without(g);
        next.bundles[i] = GoodSet{g};
        return settle(inst, std::move(next), {i}, {g});
      }
    }
  }
  return std::nullopt;
}

std::optional<RuleOutcome<State>> rule2(const Instance& inst, const State& s) {
  const Allocation& a = s.allocation;
  const auto source = source_flags(threshold_view(inst, a, Beta::kOne));
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    if (!source[i]) continue;
    for (GoodId g : a.pool) {
      if (!inst.relevant(i, g)) continue;
      Allocation next = a;
      const GoodSet grown = next.bundles[i].with(g);
      next.bundles[i] = relevant_set(inst, grown, i);
      next.pool = next.pool.without(g).united(grown.minus(next.bundles[i]));
      return settle(inst, std::move(next), {i}, {g});
    }
  }
  return std::nullopt;
}

std::optional<RuleOutcome<State>> rule3(const Instance& inst, const State& s) {
  const Allocation& a = s.allocation;
  const std::size_t n = inst.num_agents();
  const auto source = source_flags(threshold_view(inst, a, Beta::kOne));
  const auto own = detail::own_values(inst, a);
  for (AgentId i = 0; i < n; ++i) {
    if (!source[i]) continue;
    for (GoodId g : a.pool) {
      const GoodSet grown = a.bundles[i].with(g);
      bool envied = false;
      for (AgentId j = 0; j < n && !envied; ++j) {
        envied = j != i && own[j] < value(inst, j, grown);
      }
      if (envied) continue;
      Allocation next = a;
      next.bundles[i] = grown;
      next.pool.erase(g);
      return settle(inst, std::move(next), {i}, {g});
    }
  }
  return std::nullopt;
}

std::optional<RuleOutcome<State>> rule4(const Instance& inst, const State& s) {
  const Allocation& a = s.allocation;
  if (a.pool.empty()) return std::nullopt;
  const Digraph view = threshold_view(inst, a, Beta::kOne);
  const SourceDecomposition dec = sources_and_components(view);
  auto cycle = constructive_cycle(inst, a, dec);
  if (!cycle) {
    std::size_t big = 0;
    for (const auto& c : dec.components) big += c.size() >= 2 ? 1 : 0;
    if (a.pool.size() >= big) cycle = exhaustive_cycle(inst, a, dec);
  }
  if (!cycle) return std::nullopt;

  Allocation next = a;
  std::vector<AgentId> touched;
  std::vector<GoodId> goods;
  const std::size_t l = cycle->size();
  // Every bundle read below comes from the pre-rule allocation `a`.
  for (std::size_t k = 0; k < l; ++k) {
    const Link& in = (*cycle)[k];
    const AgentId head = dec.sources[in.next];
    require(head == (*cycle)[(k + 1) % l].source, "rule4 chain is not closed");
    const auto path = shortest_path(view, head, in.target);
    require(path.has_value(), "rule4 target unreachable inside its component");
    for (std::size_t q = 0; q + 1 < path->size(); ++q) next.bundles[(*path)[q]] = a.bundles[(*path)[q + 1]];
    next.bundles[in.target] = in.envied;
    const GoodSet offered = a.bundles[in.source].with(in.good);
    next.pool = next.pool.without(in.good).united(offered.minus(in.envied));
    touched.insert(touched.end(), path->begin(), path->end());
    goods.push_back(in.good);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  return settle(inst, std::move(next), std::move(touched), std::move(goods));
}

RuleOutcome<State> final_step(const Instance& inst, const State& s, bool checked) {
  Allocation next = s.allocation;
  const std::size_t n = inst.num_agents();
  if (next.pool.empty()) return RuleOutcome<State>{State{next}, {}, {}, {}};
  const Digraph view = threshold_view(inst, next, Beta::kOne);
  const SourceDecomposition dec = sources_and_components(view);
  const auto source = source_flags(view);
  std::vector<std::size_t> big;
  for (std::size_t k = 0; k < dec.sources.size(); ++k) {
    if (dec.components[k].size() >= 2) big.push_back(k);
  }
  const std::size_t bound = n / 2 >= 1 ? n / 2 - 1 : 0;
  if (checked) {
    require(next.pool.size() < big.size() && next.pool.size() <= bound,
            "cxxra final: pool of " + std::to_string(next.pool.size()) + " goods with " +
                std::to_string(big.size()) + " large components and n = " + std::to_string(n));
  }
  if (next.pool.size() > big.size()) throw InvariantViolated("cxxra final: not enough non-source receivers");
  std::vector<AgentId> agents;
  std::vector<GoodId> goods;
  std::size_t x = 0;
  for (GoodId g : GoodSet(next.pool)) {
    const auto& comp = dec.components[big[x++]];
    AgentId receiver = comp.front();
    for (AgentId a : comp) {
      if (!source[a]) {
        receiver = a;
        break;
      }
    }
    if (checked) {
      require(!source[receiver] && next.bundles[receiver].size() == 1,
              "cxxra final: receiver " + std::to_string(receiver) + " is not a singleton non-source");
    }
    next.bundles[receiver].insert(g);
    next.pool.erase(g);
    agents.push_back(receiver);
    goods.push_back(g);
  }
  return RuleOutcome<State>{State{std::move(next)}, std::move(agents), std::move(goods), {}};
}

Potential potential_of(const Instance& inst, const State& s) {
  return potential(inst, s.allocation, PotentialTag::kCxxra);
}

std::vector<Rule<State>> rules(const Instance& inst, bool checked) {
  using Fn = std::optional<RuleOutcome<State>> (*)(const Instance&, const State&);
  const std::vector<std::pair<std::string, Fn>> table{{"rule1", rule1}, {"rule2", rule2}, {"rule3", rule3},
                                                      {"rule4", rule4}};
  std::vector<Rule<State>> out;
  for (const auto& [name, fn] : table) {
    out.push_back(Rule<State>{name, [&inst, checked, fn, name = name](const State& s) {
                                auto o = fn(inst, s);
                                if (o && checked) {
                                  check_partition(inst, o->next.allocation);
                                  auto efx = check_alpha_efx(inst, o->next.allocation, Beta::kOne);
                                  require(efx.pass(), "cxxra " + name + ": " +
                                                          (efx.pass() ? "" : efx.violations.front().what));
                                  auto dd = check_named_property(inst, o->next.allocation, "ddagger");
                                  require(dd.pass(), "cxxra " + name + ": " +
                                                         (dd.pass() ? "" : dd.violations.front().what));
                                }
                                return o;
                              }});
  }
  return out;
}

}  // namespace fairdiv::cxxra
