#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv {

struct SeedResult {
  // Full-instance allocation: surviving agents hold one positively valued good,
  // removed agents hold their prematched good (or nothing), the rest is pooled.
  Allocation allocation;
  std::vector<std::pair<AgentId, GoodId>> prematched;
  std::vector<AgentId> removed_agents;  // ascending
  std::vector<GoodId> removed_goods;    // goods fixed by the Hall reduction, ascending
  std::size_t hall_rounds = 0;
};

SeedResult seed_allocation(const Instance& inst);

// The instance the algorithms actually run on: surviving agents and the goods
// left after the Hall reduction, renumbered from 0.
struct Reduction {
  Instance instance;
  std::vector<AgentId> agent_of;  // local -> original
  std::vector<GoodId> good_of;    // local -> original
  Allocation seed;                // local indexing
};

Reduction reduce(const Instance& inst, const SeedResult& seed);
// Maps a local allocation back and adds the prematched goods. Leftover goods
// of an agent-free reduction go to the lowest removed agent with no good.
Allocation lift(const Instance& inst, const SeedResult& seed, const Reduction& red, const Allocation& local);

Allocation resolve_envy_cycles(const Instance& inst, Allocation alloc);

// Moves goods out of sqrt2-strongly envied bundles until none remain.
// `on_step` sees the allocation after every single move.
Allocation envy_elimination(const Instance& inst, Allocation alloc,
                            const std::function<void(const Allocation&)>& on_step = {});

struct EnviedSubset {
  AgentId agent;
  GoodSet subset;
};

// Inclusion-minimal T within s with value_k(T) > thresholds[k] for some k,
// shrinking by ascending good index; the lowest such k is reported.
std::optional<EnviedSubset> minimal_envied_subset(const Instance& inst, const GoodSet& s,
                                                  const std::vector<Rational>& thresholds);
std::optional<EnviedSubset> most_envious_agent(const Instance& inst, const Allocation& alloc, const GoodSet& s);

// Throws Infeasible when v_i(s) <= threshold.
GoodSet minimal_subset_exceeding(const Instance& inst, AgentId i, const GoodSet& s, const Rational& threshold);

struct TraceEntry {
  std::size_t step = 0;
  std::string rule;
  std::vector<AgentId> agents;
  std::vector<GoodId> goods;
  Potential phi;                     // after the rule
  Allocation allocation;             // after the rule
  std::vector<Potential> micro_phi;  // envy-elimination steps inside the rule
};
using Trace = std::vector<TraceEntry>;

template <class State>
struct RuleOutcome {
  State next;
  std::vector<AgentId> agents;
  std::vector<GoodId> goods;
  std::vector<Potential> micro_phi;
};

template <class State>
struct Rule {
  std::string name;
  std::function<std::optional<RuleOutcome<State>>(const State&)> apply;
};

// 16 * n * m * (1 + largest value bit length).
std::size_t default_step_limit(const Instance& inst);

template <class State>
struct LoopResult {
  State state;
  Trace trace;
};

// Applies the lowest applicable rule until none applies, then `final_step`.
// State must expose `allocation`. Every rule must raise the potential.
template <class State, class PotentialOf>
LoopResult<State> run_loop(State state, const std::vector<Rule<State>>& rules,
                           const std::function<RuleOutcome<State>(const State&)>& final_step,
                           PotentialOf potential_of, std::size_t step_limit) {
  LoopResult<State> out;
  Potential phi = potential_of(state);
  std::size_t step = 0;
  for (;;) {
    std::optional<RuleOutcome<State>> outcome;
    std::string name;
    for (const auto& rule : rules) {
      outcome = rule.apply(state);
      if (outcome) {
        name = rule.name;
        break;
      }
    }
    if (!outcome) break;
    if (++step > step_limit) {
      throw StepLimitExceeded("rule loop exceeded " + std::to_string(step_limit) + " steps");
    }
    Potential next_phi = potential_of(outcome->next);
    if (compare(next_phi, phi) != std::strong_ordering::greater) {
      throw PotentialNotIncreased(name + " at step " + std::to_string(step) + " did not raise the potential");
    }
    state = std::move(outcome->next);
    phi = next_phi;
    out.trace.push_back(TraceEntry{step, name, std::move(outcome->agents), std::move(outcome->goods),
                                   std::move(next_phi), state.allocation, std::move(outcome->micro_phi)});
  }
  RuleOutcome<State> fin = final_step(state);
  state = std::move(fin.next);
  out.trace.push_back(TraceEntry{step + 1, "final", std::move(fin.agents), std::move(fin.goods),
                                 potential_of(state), state.allocation, {}});
  out.state = std::move(state);
  return out;
}

}  // namespace fairdiv
