#include "fairdiv/core.hpp"

#include <algorithm>
#include <iterator>

#include "fairdiv/errors.hpp"

namespace fairdiv {

GoodSet::GoodSet(std::initializer_list<GoodId> goods) : goods_(goods) {
  std::sort(goods_.begin(), goods_.end());
  goods_.erase(std::unique(goods_.begin(), goods_.end()), goods_.end());
}

GoodSet::GoodSet(std::vector<GoodId> goods) : goods_(std::move(goods)) {
  std::sort(goods_.begin(), goods_.end());
  goods_.erase(std::unique(goods_.begin(), goods_.end()), goods_.end());
}

bool GoodSet::contains(GoodId g) const {
  return std::binary_search(goods_.begin(), goods_.end(), g);
}

void GoodSet::insert(GoodId g) {
  auto it = std::lower_bound(goods_.begin(), goods_.end(), g);
  if (it == goods_.end() || *it != g) goods_.insert(it, g);
}

void GoodSet::erase(GoodId g) {
  auto it = std::lower_bound(goods_.begin(), goods_.end(), g);
  if (it != goods_.end() && *it == g) goods_.erase(it);
}

GoodSet GoodSet::united(const GoodSet& other) const {
  GoodSet out;
  std::set_union(goods_.begin(), goods_.end(), other.goods_.begin(), other.goods_.end(),
                 std::back_inserter(out.goods_));
  return out;
}

GoodSet GoodSet::minus(const GoodSet& other) const {
  GoodSet out;
  std::set_difference(goods_.begin(), goods_.end(), other.goods_.begin(), other.goods_.end(),
                      std::back_inserter(out.goods_));
  return out;
}

GoodSet GoodSet::with(GoodId g) const {
  GoodSet out = *this;
  out.insert(g);
  return out;
}

GoodSet GoodSet::without(GoodId g) const {
  GoodSet out = *this;
  out.erase(g);
  return out;
}

bool GoodSet::subset_of(const GoodSet& other) const {
  return std::includes(other.goods_.begin(), other.goods_.end(), goods_.begin(), goods_.end());
}

std::string to_string(const GoodSet& s) {
  std::string out = "{";
  bool first = true;
  for (GoodId g : s) {
    if (!first) out += ",";
    out += std::to_string(g);
    first = false;
  }
  return out + "}";
}

Instance::Instance(std::vector<std::vector<Rational>> values,
                   std::optional<RestrictedCertificate> restricted)
    : n_(values.size()), m_(values.empty() ? 0 : values.front().size()) {
  values_.reserve(n_ * m_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (values[i].size() != m_) {
      throw InvalidInstance("row " + std::to_string(i) + " has " + std::to_string(values[i].size()) +
                            " entries, expected " + std::to_string(m_));
    }
    for (std::size_t g = 0; g < m_; ++g) {
      if (values[i][g] < 0) {
        throw InvalidInstance("negative value for agent " + std::to_string(i) + ", good " +
                              std::to_string(g));
      }
      values_.push_back(values[i][g]);
    }
  }
  relevant_agents_.assign(m_, {});
  for (std::size_t g = 0; g < m_; ++g) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (values_[i * m_ + g] > 0) relevant_agents_[g].push_back(i);
    }
  }
  if (restricted) {
    const auto& cert = *restricted;
    if (cert.inherent.size() != m_ || cert.relevance.size() != m_) {
      throw InvalidInstance("restricted certificate must cover all " + std::to_string(m_) + " goods");
    }
    for (std::size_t g = 0; g < m_; ++g) {
      if (cert.inherent[g] <= 0) {
        throw InvalidInstance("inherent value of good " + std::to_string(g) + " must be positive");
      }
      if (cert.relevance[g] != relevant_agents_[g]) {
        throw InvalidInstance("relevance set of good " + std::to_string(g) +
                              " disagrees with the value table");
      }
      for (AgentId i : relevant_agents_[g]) {
        if (values_[i * m_ + g] != cert.inherent[g]) {
          throw InvalidInstance("agent " + std::to_string(i) + " values good " + std::to_string(g) +
                                " at " + fairdiv::to_string(values_[i * m_ + g]) +
                                ", inherent value is " + fairdiv::to_string(cert.inherent[g]));
        }
      }
    }
    restricted_ = std::move(restricted);
  }
}

GoodSet Instance::all_goods() const {
  std::vector<GoodId> ids(m_);
  for (std::size_t g = 0; g < m_; ++g) ids[g] = g;
  return GoodSet(std::move(ids));
}

std::vector<std::vector<Rational>> Instance::table() const {
  std::vector<std::vector<Rational>> out(n_, std::vector<Rational>(m_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t g = 0; g < m_; ++g) out[i][g] = values_[i * m_ + g];
  }
  return out;
}

Allocation Allocation::empty(const Instance& inst) {
  return Allocation{inst.all_goods(), std::vector<GoodSet>(inst.num_agents())};
}

void check_partition(const Instance& inst, const Allocation& a) {
  if (a.bundles.size() != inst.num_agents()) {
    throw InvariantViolated("allocation has " + std::to_string(a.bundles.size()) +
                            " bundles for " + std::to_string(inst.num_agents()) + " agents");
  }
  std::vector<int> seen(inst.num_goods(), 0);
  auto mark = [&](const GoodSet& s) {
    for (GoodId g : s) {
      if (g >= inst.num_goods()) throw InvariantViolated("good id " + std::to_string(g) + " out of range");
      if (seen[g]++) throw InvariantViolated("good " + std::to_string(g) + " appears twice");
    }
  };
  mark(a.pool);
  for (const auto& b : a.bundles) mark(b);
  for (std::size_t g = 0; g < seen.size(); ++g) {
    if (!seen[g]) throw InvariantViolated("good " + std::to_string(g) + " is not placed");
  }
}

Rational value(const Instance& inst, AgentId i, const GoodSet& s) {
  Rational total = 0;
  for (GoodId g : s) total += inst.value(i, g);
  return total;
}

GoodSet relevant_set(const Instance& inst, const GoodSet& s, AgentId i) {
  std::vector<GoodId> out;
  for (GoodId g : s) {
    if (inst.relevant(i, g)) out.push_back(g);
  }
  return GoodSet(std::move(out));
}

GoodSet relevant_pair(const Instance& inst, const GoodSet& s, AgentId i, AgentId j) {
  std::vector<GoodId> out;
  for (GoodId g : s) {
    if (inst.relevant(i, g) && inst.relevant(j, g)) out.push_back(g);
  }
  return GoodSet(std::move(out));
}

GoodSet typed_slice(const Instance& inst, const GoodSet& s, AgentId i, AgentId j) {
  std::vector<AgentId> type = i == j ? std::vector<AgentId>{i}
                                     : std::vector<AgentId>{std::min(i, j), std::max(i, j)};
  std::vector<GoodId> out;
  for (GoodId g : s) {
    if (inst.relevant_agents(g) == type) out.push_back(g);
  }
  return GoodSet(std::move(out));
}

BoundProfile classify_bounds(const Instance& inst) {
  BoundProfile b;
  const std::size_t n = inst.num_agents();
  std::vector<std::size_t> shared(n * n, 0);
  for (GoodId g = 0; g < inst.num_goods(); ++g) {
    const auto& rel = inst.relevant_agents(g);
    b.p = std::max(b.p, rel.size());
    for (std::size_t x = 0; x < rel.size(); ++x) {
      for (std::size_t y = x + 1; y < rel.size(); ++y) {
        std::size_t& c = shared[rel[x] * n + rel[y]];
        b.q = std::max(b.q, ++c);
      }
    }
  }
  return b;
}

std::optional<RestrictedCertificate> check_restricted_additive(const Instance& inst) {
  if (inst.restricted()) return inst.restricted();
  RestrictedCertificate cert;
  bool any_positive = false;
  for (GoodId g = 0; g < inst.num_goods(); ++g) {
    const auto& rel = inst.relevant_agents(g);
    cert.relevance.push_back(rel);
    if (rel.empty()) {
      cert.inherent.emplace_back(1);
      continue;
    }
    any_positive = true;
    const Rational& v = inst.value(rel.front(), g);
    for (AgentId i : rel) {
      if (inst.value(i, g) != v) return std::nullopt;
    }
    cert.inherent.push_back(v);
  }
  if (!any_positive) {
    throw DegenerateInstance("all-zero value table: inherent values must be positive");
  }
  return cert;
}

Rational inherent_value(const RestrictedCertificate& cert, const GoodSet& s) {
  Rational total = 0;
  for (GoodId g : s) total += cert.inherent[g];
  return total;
}

Instance without_good(const Instance& inst, GoodId g) {
  auto table = inst.table();
  for (auto& row : table) row.erase(row.begin() + static_cast<std::ptrdiff_t>(g));
  return Instance(std::move(table));
}

std::size_t max_value_bits(const Instance& inst) {
  std::size_t bits = 0;
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    for (GoodId g = 0; g < inst.num_goods(); ++g) bits = std::max(bits, bit_length(inst.value(i, g)));
  }
  return bits;
}

}  // namespace fairdiv
