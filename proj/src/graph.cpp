#include "fairdiv/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv {

EnvyGraph EnvyGraph::build(const Instance& inst, const Allocation& alloc) {
  return build(inst, alloc, std::vector<bool>(inst.num_agents(), true));
}

EnvyGraph EnvyGraph::build(const Instance& inst, const Allocation& alloc, const std::vector<bool>& active) {
  EnvyGraph g;
  g.n_ = inst.num_agents();
  g.active_ = active;
  g.own_.resize(g.n_);
  g.weights_.assign(g.n_ * g.n_, std::nullopt);
  for (AgentId i = 0; i < g.n_; ++i) g.own_[i] = value(inst, i, alloc.bundles[i]);
  for (AgentId i = 0; i < g.n_; ++i) {
    if (!active[i]) continue;
    for (AgentId j = 0; j < g.n_; ++j) {
      if (j == i || !active[j]) continue;
      Rational other = value(inst, i, alloc.bundles[j]);
      if (g.own_[i] == 0) {
        if (other > 0) throw UndefinedWeight(i, j);
        continue;
      }
      g.weights_[i * g.n_ + j] = other / g.own_[i];
    }
  }
  return g;
}

bool Digraph::has_edge(AgentId i, AgentId j) const {
  return std::binary_search(out[i].begin(), out[i].end(), j);
}

std::vector<std::size_t> Digraph::in_degrees() const {
  std::vector<std::size_t> deg(size(), 0);
  for (const auto& adj : out) {
    for (AgentId j : adj) ++deg[j];
  }
  return deg;
}

Digraph threshold_view(const EnvyGraph& g, Beta beta) {
  Digraph d;
  d.out.assign(g.size(), {});
  for (AgentId i = 0; i < g.size(); ++i) {
    for (AgentId j = 0; j < g.size(); ++j) {
      const auto& w = g.weight(i, j);
      if (!w) continue;
      if (exceeds(*w, beta, Rational(1))) d.out[i].push_back(j);
    }
  }
  return d;
}

Digraph threshold_view(const Instance& inst, const Allocation& alloc, Beta beta) {
  const std::size_t n = inst.num_agents();
  Digraph d;
  d.out.assign(n, {});
  for (AgentId i = 0; i < n; ++i) {
    const Rational own = value(inst, i, alloc.bundles[i]);
    for (AgentId j = 0; j < n; ++j) {
      if (j == i) continue;
      if (exceeds(value(inst, i, alloc.bundles[j]), beta, own)) d.out[i].push_back(j);
    }
  }
  return d;
}

std::vector<bool> reachable_from(const Digraph& view, AgentId from) {
  std::vector<bool> seen(view.size(), false);
  std::vector<AgentId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    AgentId u = stack.back();
    stack.pop_back();
    for (AgentId v : view.out[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

std::optional<std::vector<AgentId>> find_cycle(const Digraph& view) {
  const std::size_t n = view.size();
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> colour(n, kWhite);
  for (AgentId start = 0; start < n; ++start) {
    if (colour[start] != kWhite) continue;
    // Iterative DFS with explicit neighbour cursors.
    std::vector<std::pair<AgentId, std::size_t>> stack{{start, 0}};
    colour[start] = kGrey;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next == view.out[u].size()) {
        colour[u] = kBlack;
        stack.pop_back();
        continue;
      }
      AgentId v = view.out[u][next++];
      if (colour[v] == kGrey) {
        std::vector<AgentId> cycle{v};
        for (std::size_t k = 0; k < stack.size(); ++k) {
          if (stack[k].first == v) {
            cycle.clear();
            for (std::size_t t = k; t < stack.size(); ++t) cycle.push_back(stack[t].first);
            break;
          }
        }
        return cycle;
      }
      if (colour[v] == kWhite) {
        colour[v] = kGrey;
        stack.emplace_back(v, 0);
      }
    }
  }
  return std::nullopt;
}

SourceDecomposition sources_and_components(const Digraph& view) {
  if (auto c = find_cycle(view)) {
    std::string text;
    for (AgentId a : *c) text += std::to_string(a) + "->";
    throw CyclicGraph("threshold view has a cycle " + text + std::to_string(c->front()));
  }
  const std::size_t n = view.size();
  const auto in = view.in_degrees();
  SourceDecomposition out;
  out.component_of.assign(n, std::numeric_limits<std::size_t>::max());
  for (AgentId s = 0; s < n; ++s) {
    if (in[s] != 0) continue;
    const std::size_t k = out.sources.size();
    out.sources.push_back(s);
    out.components.emplace_back();
    const auto reach = reachable_from(view, s);
    for (AgentId a = 0; a < n; ++a) {
      if (reach[a] && out.component_of[a] == std::numeric_limits<std::size_t>::max()) {
        out.component_of[a] = k;
        out.components[k].push_back(a);
      }
    }
  }
  return out;
}

std::optional<std::vector<AgentId>> shortest_path(const Digraph& view, AgentId from, AgentId to) {
  const std::size_t n = view.size();
  const std::size_t inf = std::numeric_limits<std::size_t>::max();
  // Distances to `to` over reversed edges, then a greedy forward walk.
  std::vector<std::vector<AgentId>> rev(n);
  for (AgentId u = 0; u < n; ++u) {
    for (AgentId v : view.out[u]) rev[v].push_back(u);
  }
  std::vector<std::size_t> dist(n, inf);
  std::deque<AgentId> queue{to};
  dist[to] = 0;
  while (!queue.empty()) {
    AgentId v = queue.front();
    queue.pop_front();
    for (AgentId u : rev[v]) {
      if (dist[u] == inf) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (dist[from] == inf) return std::nullopt;
  std::vector<AgentId> path{from};
  AgentId cur = from;
  while (cur != to) {
    for (AgentId v : view.out[cur]) {
      if (dist[v] + 1 == dist[cur]) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

namespace {

struct Relaxation {
  std::vector<Rational> rank;
  std::vector<AgentId> parent;
  std::vector<AgentId> improved_last;  // vertices improved in round n
};

// Multiplicative Bellman-Ford from a virtual source of weight 1 to every
// active vertex. Runs up to n rounds; an improvement in round n means a cycle
// with product > 1.
Relaxation relax(const EnvyGraph& g) {
  const std::size_t n = g.size();
  Relaxation r;
  r.rank.assign(n, Rational(1));
  r.parent.resize(n);
  for (AgentId i = 0; i < n; ++i) r.parent[i] = i;
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<AgentId> changed;
    for (AgentId j = 0; j < n; ++j) {
      for (AgentId k = 0; k < n; ++k) {
        const auto& w = g.weight(j, k);
        if (!w || *w == 0) continue;
        Rational cand = r.rank[j] * *w;
        if (cand > r.rank[k]) {
          r.rank[k] = std::move(cand);
          r.parent[k] = j;
          changed.push_back(k);
        }
      }
    }
    if (changed.empty()) return r;
    if (round + 1 == n) r.improved_last = std::move(changed);
  }
  return r;
}

}  // namespace

std::optional<Rational> path_product(const EnvyGraph& g, const std::vector<AgentId>& path) {
  Rational prod = 1;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto& w = g.weight(path[k], path[k + 1]);
    if (!w) return std::nullopt;
    prod *= *w;
  }
  return prod;
}

std::optional<std::vector<AgentId>> super_unit_cycle(const EnvyGraph& g) {
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  Relaxation r = relax(g);
  if (r.improved_last.empty()) return std::nullopt;
  std::optional<std::vector<AgentId>> best;
  for (AgentId start : r.improved_last) {
    AgentId v = start;
    for (std::size_t k = 0; k < n; ++k) v = r.parent[v];
    if (r.parent[v] == v) continue;
    std::vector<AgentId> cycle{v};
    for (AgentId u = r.parent[v]; u != v; u = r.parent[u]) cycle.push_back(u);
    std::reverse(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    std::vector<AgentId> closed = cycle;
    closed.push_back(cycle.front());
    auto prod = path_product(g, closed);
    if (prod && *prod > 1 && (!best || cycle < *best)) best = std::move(cycle);
  }
  if (!best) throw InvariantViolated("no super-unit cycle among the predecessor chains");
  return best;
}

RankTable compute_ranks(const EnvyGraph& g) {
  const std::size_t n = g.size();
  Relaxation r = relax(g);
  if (!r.improved_last.empty()) throw SuperUnitCycle("rank undefined: the envy graph has a cycle with product > 1");

  // Tight edges carry every maximum-product path. Edges into rank-1 vertices
  // are dropped: such a vertex starts its own rankpath, so only the root of a
  // rankpath has rank 1.
  std::vector<std::vector<AgentId>> tight(n), tight_rev(n);
  for (AgentId j = 0; j < n; ++j) {
    for (AgentId k = 0; k < n; ++k) {
      const auto& w = g.weight(j, k);
      if (!w || *w == 0 || r.rank[k] == 1) continue;
      if (r.rank[j] * *w == r.rank[k]) {
        tight[j].push_back(k);
        tight_rev[k].push_back(j);
      }
    }
  }

  // Can `from` reach `to` over tight edges without touching `blocked`?
  auto reaches = [&](AgentId from, AgentId to, const std::vector<bool>& blocked) {
    std::vector<bool> seen(blocked);
    std::vector<AgentId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      AgentId u = stack.back();
      stack.pop_back();
      if (u == to) return true;
      for (AgentId v : tight[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return false;
  };

  RankTable table(n);
  for (AgentId i = 0; i < n; ++i) {
    std::vector<bool> anc(n, false);
    std::vector<AgentId> stack{i};
    anc[i] = true;
    while (!stack.empty()) {
      AgentId u = stack.back();
      stack.pop_back();
      for (AgentId v : tight_rev[u]) {
        if (!anc[v]) {
          anc[v] = true;
          stack.push_back(v);
        }
      }
    }
    AgentId root = i;
    for (AgentId a = 0; a < n; ++a) {
      if (anc[a] && r.rank[a] == 1) {
        root = a;
        break;
      }
    }
    // Lexicographically smallest simple tight path root -> i.
    std::vector<AgentId> path{root};
    std::vector<bool> used(n, false);
    used[root] = true;
    AgentId cur = root;
    while (cur != i) {
      bool stepped = false;
      for (AgentId v : tight[cur]) {
        if (used[v]) continue;
        std::vector<bool> blocked = used;
        if (v == i || reaches(v, i, blocked)) {
          used[v] = true;
          path.push_back(v);
          cur = v;
          stepped = true;
          break;
        }
      }
      if (!stepped) throw InvariantViolated("rankpath extraction failed");
    }
    RankEntry& e = table[i];
    e.rank = r.rank[i];
    e.root = root;
    e.path = std::move(path);
    e.virtual_value = g.own_value(i) / e.rank;
  }
  return table;
}

bool feasible_rank_bound_check(const EnvyGraph& g, const std::vector<Rational>& bound) {
  for (AgentId i = 0; i < g.size(); ++i) {
    if (bound[i] < 1) return false;
    for (AgentId j = 0; j < g.size(); ++j) {
      const auto& w = g.weight(i, j);
      if (w && bound[i] * *w > bound[j]) return false;
    }
  }
  return true;
}

}  // namespace fairdiv
