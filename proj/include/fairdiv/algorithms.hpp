#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/framework.hpp"
#include "fairdiv/graph.hpp"

namespace fairdiv {

enum class Algorithm { kCxxra, kSqrt2Ra, kSqrt2Pq, kPqrax };

std::string_view algorithm_name(Algorithm alg);
std::optional<Algorithm> parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

// Complete EF2X (partial EFX before the final step), (inf,1)-bounded.
namespace cxxra {
struct State {
  Allocation allocation;
};
std::vector<Rule<State>> rules(const Instance& inst, bool checked);
RuleOutcome<State> final_step(const Instance& inst, const State& s, bool checked);
Potential potential_of(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule2(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule3(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule4(const Instance& inst, const State& s);
}  // namespace cxxra

// sqrt2/2-EFX for restricted additive valuations.
namespace sqrt2_ra {
struct State {
  Allocation allocation;
};
std::vector<Rule<State>> rules(const Instance& inst, bool checked);
RuleOutcome<State> final_step(const Instance& inst, const State& s, bool checked);
Potential potential_of(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule2(const Instance& inst, const State& s);
}  // namespace sqrt2_ra

// sqrt2/2-EFX for (inf,1)-bounded additive valuations.
namespace sqrt2_pq {
struct State {
  Allocation allocation;
};
std::vector<Rule<State>> rules(const Instance& inst, bool checked);
RuleOutcome<State> final_step(const Instance& inst, const State& s, bool checked);
Potential potential_of(const Instance& inst, const State& s);
// Rule 1 annotates agents with the receiver's rankpath (root first) and goods
// with the handed-over pool subset.
std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s);
// Rank bound for the post-rule state: ranks for agents off the path, the
// successor's rank along it, and `ratio` for the receiver.
std::vector<Rational> rank_bound(const RankTable& before, const std::vector<AgentId>& path,
                                 const Rational& ratio);
}  // namespace sqrt2_pq

// Exact EFX for restricted additive valuations with p = 2.
namespace pqrax {
struct State {
  Allocation allocation;
  std::vector<bool> remaining;  // N
};
std::vector<Rule<State>> rules(const Instance& inst, bool checked);
RuleOutcome<State> final_step(const Instance& inst, const State& s, bool checked);
Potential potential_of(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule1(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule2(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule3(const Instance& inst, const State& s);
std::optional<RuleOutcome<State>> rule4(const Instance& inst, const State& s);
}  // namespace pqrax

struct RunOptions {
  std::optional<std::size_t> step_limit;  // default_step_limit() when unset
  bool check_invariants = true;
};

struct RunResult {
  Algorithm algorithm = Algorithm::kCxxra;
  Allocation allocation;  // original indexing
  SeedResult seed;
  Reduction reduction;
  Trace trace;  // indices of reduction.instance
  std::size_t pre_final_pool = 0;
};

// Throws ClassMismatch when `inst` is outside the algorithm's class.
void check_class(const Instance& inst, Algorithm alg);

RunResult run_algorithm(const Instance& inst, Algorithm alg, const RunOptions& opts = {});

// Trace with agents, goods and snapshots mapped to the original instance.
Trace lifted_trace(const Instance& inst, const RunResult& result);

// Re-applies every recorded rule from the seed and compares snapshots.
bool replay(const Instance& inst, const RunResult& result);

// The fairness notion each algorithm guarantees on its final allocation.
FairnessReport verify_guarantee(const Instance& inst, Algorithm alg, const Allocation& alloc);

std::map<std::string, std::size_t> rule_counts(const Trace& trace);

}  // namespace fairdiv
