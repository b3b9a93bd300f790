#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

using AgentId = std::size_t;
using GoodId = std::size_t;

// Sorted, duplicate-free set of good ids. Iteration is ascending.
class GoodSet {
 public:
  GoodSet() = default;
  GoodSet(std::initializer_list<GoodId> goods);
  explicit GoodSet(std::vector<GoodId> goods);

  bool contains(GoodId g) const;
  void insert(GoodId g);
  void erase(GoodId g);
  std::size_t size() const { return goods_.size(); }
  bool empty() const { return goods_.empty(); }

  GoodSet united(const GoodSet& other) const;
  GoodSet minus(const GoodSet& other) const;
  GoodSet with(GoodId g) const;
  GoodSet without(GoodId g) const;
  bool subset_of(const GoodSet& other) const;

  auto begin() const { return goods_.begin(); }
  auto end() const { return goods_.end(); }
  const std::vector<GoodId>& ids() const { return goods_; }

  friend bool operator==(const GoodSet&, const GoodSet&) = default;
  friend auto operator<=>(const GoodSet&, const GoodSet&) = default;

 private:
  std::vector<GoodId> goods_;
};

std::string to_string(const GoodSet& s);

struct RestrictedCertificate {
  std::vector<Rational> inherent;           // v_g per good
  std::vector<std::vector<AgentId>> relevance;  // agents valuing g, ascending
  friend bool operator==(const RestrictedCertificate&, const RestrictedCertificate&) = default;
};

class Instance {
 public:
  Instance() = default;
  // values[i][g]; throws InvalidInstance on ragged rows or negative entries, and
  // when `restricted` disagrees with the table.
  explicit Instance(std::vector<std::vector<Rational>> values,
                    std::optional<RestrictedCertificate> restricted = std::nullopt);

  std::size_t num_agents() const { return n_; }
  std::size_t num_goods() const { return m_; }
  const Rational& value(AgentId i, GoodId g) const { return values_[i * m_ + g]; }
  bool relevant(AgentId i, GoodId g) const { return values_[i * m_ + g] > 0; }
  // Agents with positive value for g, ascending.
  const std::vector<AgentId>& relevant_agents(GoodId g) const { return relevant_agents_[g]; }
  const std::optional<RestrictedCertificate>& restricted() const { return restricted_; }
  GoodSet all_goods() const;
  std::vector<std::vector<Rational>> table() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.values_ == b.values_ && a.restricted_ == b.restricted_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Rational> values_;
  std::vector<std::vector<AgentId>> relevant_agents_;
  std::optional<RestrictedCertificate> restricted_;
};

struct Allocation {
  GoodSet pool;
  std::vector<GoodSet> bundles;

  static Allocation empty(const Instance& inst);  // everything in the pool
  bool complete() const { return pool.empty(); }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Throws InvariantViolated unless `a` partitions the goods of `inst` into
// pool + one bundle per agent.
void check_partition(const Instance& inst, const Allocation& a);

struct BoundProfile {
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
  std::size_t p = 0;
  std::size_t q = 0;
  friend bool operator==(const BoundProfile&, const BoundProfile&) = default;
};

Rational value(const Instance& inst, AgentId i, const GoodSet& s);
GoodSet relevant_set(const Instance& inst, const GoodSet& s, AgentId i);
GoodSet relevant_pair(const Instance& inst, const GoodSet& s, AgentId i, AgentId j);
// Goods of `s` whose relevance set is exactly {i, j} ({i} when i == j).
GoodSet typed_slice(const Instance& inst, const GoodSet& s, AgentId i, AgentId j);

BoundProfile classify_bounds(const Instance& inst);

// Certificate when every good's positive values coincide. Goods nobody values
// get inherent value 1 and an empty relevance set. Throws DegenerateInstance
// on an all-zero table.
std::optional<RestrictedCertificate> check_restricted_additive(const Instance& inst);

// The common value v(S) = sum of inherent values.
Rational inherent_value(const RestrictedCertificate& cert, const GoodSet& s);

// Copy of `inst` with good `g` removed (later goods shift down by one).
Instance without_good(const Instance& inst, GoodId g);

// Largest bit length over all table entries.
std::size_t max_value_bits(const Instance& inst);

}  // namespace fairdiv
