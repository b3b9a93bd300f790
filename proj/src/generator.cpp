#include "fairdiv/generator.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& w : s_) w = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

std::uint64_t Xoshiro256::uniform(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return lo + x % range;
  }
}

namespace {

constexpr std::array<std::pair<Model, std::string_view>, 4> kModels{{
    {Model::kRestrictedP2, "restricted_p2"},
    {Model::kRestrictedAny, "restricted_any"},
    {Model::kAdditiveInfty1, "additive_infty1"},
    {Model::kAdditivePq, "additive_pq"},
}};

// Partial Fisher-Yates: k distinct agents, in draw order.
std::vector<AgentId> draw_agents(Xoshiro256& rng, std::size_t n, std::size_t k) {
  std::vector<AgentId> all(n);
  for (AgentId a = 0; a < n; ++a) all[a] = a;
  for (std::size_t t = 0; t < k; ++t) std::swap(all[t], all[rng.uniform(t, n - 1)]);
  all.resize(k);
  return all;
}

// Relevance sets with at most p agents per good and at most q goods shared by
// any pair. Agents that would break q are skipped.
std::vector<std::vector<AgentId>> relevance_sets(Xoshiro256& rng, std::size_t n, std::size_t m, std::size_t p,
                                                 std::size_t q) {
  std::vector<std::size_t> shared(n * n, 0);
  std::vector<std::vector<AgentId>> sets(m);
  for (GoodId g = 0; g < m; ++g) {
    const std::size_t want = rng.uniform(1, std::min(p, n));
    std::vector<AgentId> order = draw_agents(rng, n, n);
    if (g < n) {
      std::erase(order, g);
      order.insert(order.begin(), g);
    }
    std::vector<AgentId>& set = sets[g];
    for (AgentId a : order) {
      if (set.size() == want) break;
      const bool ok = std::all_of(set.begin(), set.end(), [&](AgentId b) { return shared[a * n + b] < q; });
      if (!ok) continue;
      for (AgentId b : set) {
        ++shared[a * n + b];
        ++shared[b * n + a];
      }
      set.push_back(a);
    }
    std::sort(set.begin(), set.end());
  }
  return sets;
}

}  // namespace

std::string_view model_name(Model m) {
  for (const auto& [model, name] : kModels) {
    if (model == m) return name;
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view name) {
  for (const auto& [model, n] : kModels) {
    if (n == name) return model;
  }
  return std::nullopt;
}

Instance generate(const GenSpec& spec) {
  if (spec.n == 0) throw InfeasibleSpec("need at least one agent");
  if (spec.m == 0) throw InfeasibleSpec("need at least one good");
  if (spec.lo == 0) throw InfeasibleSpec("values must be positive (lo >= 1)");
  if (spec.lo > spec.hi) throw InfeasibleSpec("empty value range: lo > hi");
  if (spec.p && *spec.p == 0) throw InfeasibleSpec("p must be at least 1");
  const std::size_t unbounded = BoundProfile::kUnbounded;
  std::size_t p = spec.p.value_or(unbounded);
  std::size_t q = spec.q.value_or(unbounded);
  bool restricted = false;
  switch (spec.model) {
    case Model::kRestrictedP2:
      if (spec.p && *spec.p != 2) throw InfeasibleSpec("restricted_p2 fixes p = 2");
      p = 2;
      restricted = true;
      break;
    case Model::kRestrictedAny:
      restricted = true;
      break;
    case Model::kAdditiveInfty1:
      if (spec.q && *spec.q != 1) throw InfeasibleSpec("additive_infty1 fixes q = 1");
      q = 1;
      break;
    case Model::kAdditivePq:
      break;
  }
  Xoshiro256 rng(spec.seed);
  const auto sets = relevance_sets(rng, spec.n, spec.m, p, q);
  std::vector<std::vector<Rational>> table(spec.n, std::vector<Rational>(spec.m, Rational(0)));
  std::optional<RestrictedCertificate> cert;
  if (restricted) cert = RestrictedCertificate{};
  for (GoodId g = 0; g < spec.m; ++g) {
    const std::uint64_t inherent = rng.uniform(spec.lo, spec.hi);
    for (AgentId a : sets[g]) {
      table[a][g] = Rational(restricted ? inherent : rng.uniform(spec.lo, spec.hi));
    }
    if (cert) {
      cert->inherent.emplace_back(inherent);
      cert->relevance.push_back(sets[g]);
    }
  }
  Instance inst(std::move(table), std::move(cert));
  const BoundProfile b = classify_bounds(inst);
  if ((p != unbounded && b.p > p) || (q != unbounded && b.q > q) ||
      (restricted && !check_restricted_additive(inst))) {
    throw InfeasibleSpec("generated instance fails its class check");
  }
  return inst;
}

}  // namespace fairdiv
