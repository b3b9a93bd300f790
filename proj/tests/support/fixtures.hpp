#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/generator.hpp"

namespace fairdiv::testing {

inline std::vector<std::vector<Rational>> table(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (long v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return out;
}

inline Instance make(const std::vector<std::vector<long>>& rows) { return Instance(table(rows)); }

// The 4x7 restricted, (2,2)-bounded example; agents and goods 0-based.
inline Instance example_4x7() {
  return make({
      {3, 3, 6, 0, 0, 10, 0},
      {0, 0, 0, 6, 7, 10, 0},
      {3, 3, 0, 6, 0, 0, 10},
      {0, 0, 6, 0, 7, 0, 10},
  });
}

// Pool {4}; bundles {0,2}, {5}, {1,3}, {6}.
inline Allocation example_4x7_alloc() {
  Allocation a;
  a.pool = GoodSet{4};
  a.bundles = {GoodSet{0, 2}, GoodSet{5}, GoodSet{1, 3}, GoodSet{6}};
  return a;
}

// The 4x3 (3,1)-bounded, non-restricted example.
inline Instance example_4x3() {
  return make({
      {2, 0, 0},
      {1, 0, 5},
      {4, 3, 0},
      {0, 4, 0},
  });
}

// Hall-deficient instance k: a crowd of `crowd` agents values only `crowd - 1`
// (or fewer) shared goods; everyone else has private goods. Deterministic in k.
struct HallFixture {
  Instance instance;
  std::vector<AgentId> crowd;
  std::vector<GoodId> crowd_goods;
};

inline HallFixture hall_fixture(std::size_t k) {
  Xoshiro256 rng(0xfa11 + k);
  const std::size_t n = rng.uniform(3, 8);
  const std::size_t crowd = rng.uniform(2, n);
  const std::size_t shared = rng.uniform(1, crowd - 1);
  const std::size_t extra = crowd == n ? 0 : rng.uniform(0, 3);
  const std::size_t m = shared + (n - crowd) + extra;
  std::vector<std::vector<Rational>> t(n, std::vector<Rational>(m, Rational(0)));
  HallFixture f;
  // Crowd agents are spread over the index range so the reduction has to renumber.
  std::vector<AgentId> order(n);
  for (AgentId a = 0; a < n; ++a) order[a] = a;
  for (std::size_t s = 0; s + 1 < n; ++s) std::swap(order[s], order[rng.uniform(s, n - 1)]);
  for (std::size_t c = 0; c < crowd; ++c) f.crowd.push_back(order[c]);
  std::sort(f.crowd.begin(), f.crowd.end());
  for (GoodId g = 0; g < shared; ++g) f.crowd_goods.push_back(g);
  for (AgentId a : f.crowd) {
    for (GoodId g = 0; g < shared; ++g) t[a][g] = Rational(rng.uniform(1, 9));
  }
  GoodId next = shared;
  for (std::size_t c = crowd; c < n; ++c) {
    const AgentId a = order[c];
    t[a][next++] = Rational(rng.uniform(1, 9));
    // Outsiders may also like the crowd's goods and the extras.
    for (GoodId g = 0; g < shared; ++g) {
      if (rng.uniform(0, 2) == 0) t[a][g] = Rational(rng.uniform(1, 9));
    }
  }
  for (GoodId g = next; g < m; ++g) t[order[rng.uniform(crowd, n - 1)]][g] = Rational(rng.uniform(1, 9));
  f.instance = Instance(std::move(t));
  return f;
}

// Size of a maximum agent-good matching over positive values, from the
// deficiency form of Hall's theorem: n - max over agent sets S of
// |S| - |N(S)|. Independent of the library's matching; n <= 16.
inline std::size_t brute_matching(const Instance& inst) {
  const std::size_t n = inst.num_agents();
  std::size_t deficiency = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::size_t size = 0, neighbours = 0;
    for (AgentId a = 0; a < n; ++a) size += (mask >> a) & 1;
    for (GoodId g = 0; g < inst.num_goods(); ++g) {
      for (AgentId a = 0; a < n; ++a) {
        if (((mask >> a) & 1) && inst.relevant(a, g)) {
          ++neighbours;
          break;
        }
      }
    }
    if (size > neighbours) deficiency = std::max(deficiency, size - neighbours);
  }
  return n - deficiency;
}

}  // namespace fairdiv::testing
