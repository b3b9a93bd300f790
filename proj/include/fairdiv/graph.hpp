#pragma once

#include <optional>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// Weighted envy graph: weight(i,j) = v_i(X_j) / v_i(X_i). Pairs where both
// values are zero are absent. Agents outside `active` carry no edges.
class EnvyGraph {
 public:
  static EnvyGraph build(const Instance& inst, const Allocation& alloc);
  static EnvyGraph build(const Instance& inst, const Allocation& alloc, const std::vector<bool>& active);

  std::size_t size() const { return n_; }
  bool active(AgentId i) const { return active_[i]; }
  const std::optional<Rational>& weight(AgentId i, AgentId j) const { return weights_[i * n_ + j]; }
  const Rational& own_value(AgentId i) const { return own_[i]; }

 private:
  std::size_t n_ = 0;
  std::vector<bool> active_;
  std::vector<Rational> own_;
  std::vector<std::optional<Rational>> weights_;
};

// Unweighted digraph over agents; adjacency lists ascending.
struct Digraph {
  std::vector<std::vector<AgentId>> out;

  std::size_t size() const { return out.size(); }
  bool has_edge(AgentId i, AgentId j) const;
  std::vector<std::size_t> in_degrees() const;
};

Digraph threshold_view(const EnvyGraph& g, Beta beta);
// Same edge set computed straight from values; tolerates v_i(X_i) = 0.
Digraph threshold_view(const Instance& inst, const Allocation& alloc, Beta beta);

struct SourceDecomposition {
  std::vector<AgentId> sources;                  // ascending
  std::vector<std::vector<AgentId>> components;  // components[k] belongs to sources[k]
  std::vector<std::size_t> component_of;         // agent -> index into sources
};

// Throws CyclicGraph when `view` has a directed cycle.
SourceDecomposition sources_and_components(const Digraph& view);

// First cycle found by DFS from the lowest vertex, neighbours ascending.
std::optional<std::vector<AgentId>> find_cycle(const Digraph& view);

std::vector<bool> reachable_from(const Digraph& view, AgentId from);

// Shortest path from -> to (inclusive), lexicographically smallest among
// shortest ones.
std::optional<std::vector<AgentId>> shortest_path(const Digraph& view, AgentId from, AgentId to);

struct RankEntry {
  Rational rank;
  AgentId root = 0;
  std::vector<AgentId> path;  // root ... agent
  Rational virtual_value;
};
using RankTable = std::vector<RankEntry>;

// A cycle (listed once, smallest vertex first) with weight product > 1.
std::optional<std::vector<AgentId>> super_unit_cycle(const EnvyGraph& g);

// Rankpath: among maximum-product simple paths ending at the agent whose
// vertices after the first all have rank > 1, the lexicographically smallest.
// Throws SuperUnitCycle when one exists.
RankTable compute_ranks(const EnvyGraph& g);

bool feasible_rank_bound_check(const EnvyGraph& g, const std::vector<Rational>& bound);

// Product of weights along `path`; nullopt if some edge is undefined.
std::optional<Rational> path_product(const EnvyGraph& g, const std::vector<AgentId>& path);

}  // namespace fairdiv
