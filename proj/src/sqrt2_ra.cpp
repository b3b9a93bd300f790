#include <algorithm>

#include "algo_util.hpp"
#include "fairdiv/algorithms.hpp"

namespace fairdiv::sqrt2_ra {

namespace {

using detail::require;

std::vector<bool> sqrt2_sources(const Instance& inst, const Allocation& a) {
  const auto in = threshold_view(inst, a, Beta::kSqrt2).in_degrees();
  std::vector<bool> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] == 0;
  return out;
}

RuleOutcome<State> eliminate(const Instance& inst, Allocation alloc, std::vector<AgentId> agents,
                             std::vector<GoodId> goods) {
  std::vector<Potential> micro;
  micro.push_back(potential(inst, alloc, PotentialTag::kSources));
  alloc = envy_elimination(inst, std::move(alloc), [&](const Allocation& step) {
    micro.push_back(potential(inst, step, PotentialTag::kSources));
  });
  return RuleOutcome<State>{State{std::move(alloc)}, std::move(agents), std::move(goods), std::move(micro)};
}

}  // namespace

std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s) {
  const Allocation& a = s.allocation;
  const auto source = sqrt2_sources(inst, a);
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    if (!source[i]) continue;
    for (GoodId g : a.pool) {
      if (!inst.relevant(i, g)) continue;
      Allocation next = a;
      next.bundles[i].insert(g);
      next.pool.erase(g);
      return eliminate(inst, std::move(next), {i}, {g});
    }
  }
  return std::nullopt;
}

std::optional<RuleOutcome<State>> rule2(const Instance& inst, const State& s) {
  const Allocation& a = s.allocation;
  const std::size_t n = inst.num_agents();
  for (AgentId i = 0; i < n; ++i) {
    const GoodSet wanted = relevant_set(inst, a.pool, i);
    const Rational own = value(inst, i, a.bundles[i]);
    const Rational offer = value(inst, i, wanted);
    if (!(own * own < 2 * offer * offer)) continue;
    const Digraph view = threshold_view(inst, a, Beta::kSqrt2);
    const auto in = view.in_degrees();
    require(in[i] > 0, "sqrt2-ra rule2: agent " + std::to_string(i) + " is a source");
    std::optional<std::vector<AgentId>> path;
    for (AgentId j = 0; j < n && !path; ++j) {
      if (in[j] == 0) path = shortest_path(view, j, i);
    }
    require(path.has_value(), "sqrt2-ra rule2: no source reaches agent " + std::to_string(i));
    Allocation next = a;
    const GoodSet returned = detail::shift_along(next, *path);
    next.bundles[i] = wanted;
    next.pool = next.pool.minus(wanted).united(returned);
    return eliminate(inst, std::move(next), *path, wanted.ids());
  }
  return std::nullopt;
}

RuleOutcome<State> final_step(const Instance& inst, const State& s, bool) {
  Allocation next = s.allocation;
  if (next.pool.empty()) return RuleOutcome<State>{State{next}, {}, {}, {}};
  const auto source = sqrt2_sources(inst, next);
  std::optional<AgentId> pick;
  Rational best;
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    if (!source[i]) continue;
    Rational v = value(inst, i, next.bundles[i]);
    if (!pick || v < best) {
      pick = i;
      best = v;
    }
  }
  require(pick.has_value(), "sqrt2-ra final: no source");
  std::vector<GoodId> goods = next.pool.ids();
  next.bundles[*pick] = next.bundles[*pick].united(next.pool);
  next.pool = GoodSet{};
  return RuleOutcome<State>{State{std::move(next)}, {*pick}, std::move(goods), {}};
}

Potential potential_of(const Instance& inst, const State& s) {
  return potential(inst, s.allocation, PotentialTag::kSources);
}

std::vector<Rule<State>> rules(const Instance& inst, bool checked) {
  using Fn = std::optional<RuleOutcome<State>> (*)(const Instance&, const State&);
  const std::vector<std::pair<std::string, Fn>> table{{"rule1", rule1}, {"rule2", rule2}};
  std::vector<Rule<State>> out;
  for (const auto& [name, fn] : table) {
    out.push_back(Rule<State>{name, [&inst, checked, fn, name = name](const State& s) {
                                auto o = fn(inst, s);
                                if (o && checked) {
                                  check_partition(inst, o->next.allocation);
                                  for (std::size_t k = 1; k < o->micro_phi.size(); ++k) {
                                    require(compare(o->micro_phi[k], o->micro_phi[k - 1]) !=
                                                std::strong_ordering::less,
                                            "sqrt2-ra " + name + ": envy elimination lowered the potential");
                                  }
                                  auto sec = check_named_property(inst, o->next.allocation, "section");
                                  require(sec.pass(), "sqrt2-ra " + name + ": " +
                                                          (sec.pass() ? "" : sec.violations.front().what));
                                  auto efx = check_alpha_efx(inst, o->next.allocation, Beta::kSqrt2);
                                  require(efx.pass(), "sqrt2-ra " + name + ": " +
                                                          (efx.pass() ? "" : efx.violations.front().what));
                                }
                                return o;
                              }});
  }
  return out;
}

}  // namespace fairdiv::sqrt2_ra
