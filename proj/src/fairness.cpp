#include "fairdiv/fairness.hpp"

#include <algorithm>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

// Least valuable good of s for agent i, lowest index on ties.
std::optional<GoodId> least_valued(const Instance& inst, AgentId i, const GoodSet& s) {
  std::optional<GoodId> best;
  for (GoodId g : s) {
    if (!best || inst.value(i, g) < inst.value(i, *best)) best = g;
  }
  return best;
}

Rational scaled_margin(const Rational& residual, Beta beta, const Rational& own) {
  switch (beta) {
    case Beta::kZero: return residual;
    case Beta::kOne: return residual - own;
    case Beta::kSqrt2: return residual * residual - 2 * own * own;
  }
  return 0;
}

Violation agent_failure(AgentId i, std::vector<GoodId> witness, std::string what) {
  return Violation{i, i, std::move(witness), Rational(0), std::move(what)};
}

void check_fully_relevant(const Instance& inst, const Allocation& alloc, AgentId i, const char* label,
                          FairnessReport& report) {
  GoodSet irrelevant = alloc.bundles[i].minus(relevant_set(inst, alloc.bundles[i], i));
  if (!irrelevant.empty()) {
    report.violations.push_back(agent_failure(
        i, irrelevant.ids(),
        std::string(label) + ": agent " + std::to_string(i) + " holds irrelevant goods " + to_string(irrelevant)));
  }
}

}  // namespace

std::optional<StrongEnvy> beta_strong_envy(const Instance& inst, const Allocation& alloc, AgentId i,
                                           AgentId j, Beta beta) {
  const GoodSet& other = alloc.bundles[j];
  if (other.size() < 2) return std::nullopt;
  const GoodId g = *least_valued(inst, i, other);
  const Rational residual = value(inst, i, other) - inst.value(i, g);
  const Rational own = value(inst, i, alloc.bundles[i]);
  if (!exceeds(residual, beta, own)) return std::nullopt;
  return StrongEnvy{g, scaled_margin(residual, beta, own)};
}

FairnessReport check_alpha_efx(const Instance& inst, const Allocation& alloc, Beta beta) {
  FairnessReport report;
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    for (AgentId j = 0; j < inst.num_agents(); ++j) {
      if (i == j) continue;
      if (auto e = beta_strong_envy(inst, alloc, i, j, beta)) {
        report.violations.push_back(Violation{i, j, {e->witness}, e->margin,
                                              "agent " + std::to_string(i) + " " + to_string(beta) +
                                                  "-strongly envies agent " + std::to_string(j)});
      }
    }
  }
  return report;
}

FairnessReport check_ef2x(const Instance& inst, const Allocation& alloc) {
  FairnessReport report;
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    const Rational own = value(inst, i, alloc.bundles[i]);
    for (AgentId j = 0; j < inst.num_agents(); ++j) {
      const GoodSet& other = alloc.bundles[j];
      if (i == j || other.size() < 3) continue;
      const GoodId a = *least_valued(inst, i, other);
      const GoodId b = *least_valued(inst, i, other.without(a));
      const Rational residual = value(inst, i, other) - inst.value(i, a) - inst.value(i, b);
      if (residual > own) {
        report.violations.push_back(Violation{i, j, GoodSet{a, b}.ids(), residual - own,
                                              "agent " + std::to_string(i) + " envies agent " +
                                                  std::to_string(j) + " after removing two goods"});
      }
    }
  }
  return report;
}

FairnessReport check_virtual_efx(const Instance& inst, const Allocation& alloc, const RankTable& ranks,
                                 const std::vector<bool>* scope) {
  FairnessReport report;
  const std::size_t n = inst.num_agents();
  auto in_scope = [&](AgentId a) { return scope == nullptr || (*scope)[a]; };
  for (AgentId i = 0; i < n; ++i) {
    if (!in_scope(i)) continue;
    for (AgentId j = 0; j < n; ++j) {
      const GoodSet& other = alloc.bundles[j];
      if (!in_scope(j) || other.empty()) continue;
      const GoodId g = *least_valued(inst, i, other);
      const Rational residual = value(inst, i, other) - inst.value(i, g);
      if (residual > ranks[i].virtual_value) {
        report.violations.push_back(Violation{i, j, {g}, residual - ranks[i].virtual_value,
                                              "agent " + std::to_string(i) +
                                                  " virtually strongly envies agent " + std::to_string(j)});
      }
    }
  }
  return report;
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"ddagger", "section", "dagger", "uparrow"};
  return names;
}

FairnessReport check_named_property(const Instance& inst, const Allocation& alloc, std::string_view name,
                                    const PropertyContext& ctx) {
  const std::size_t n = inst.num_agents();
  FairnessReport report;
  if (name == "ddagger") {
    const auto in = threshold_view(inst, alloc, Beta::kOne).in_degrees();
    for (AgentId i = 0; i < n; ++i) {
      if (in[i] > 0) check_fully_relevant(inst, alloc, i, "ddagger", report);
    }
    return report;
  }
  if (name == "section") {
    for (AgentId i = 0; i < n; ++i) check_fully_relevant(inst, alloc, i, "section", report);
    return report;
  }
  if (name == "dagger") {
    std::optional<EnvyGraph> g;
    try {
      g = EnvyGraph::build(inst, alloc);
    } catch (const UndefinedWeight& e) {
      report.violations.push_back(agent_failure(e.i, {}, std::string("dagger: ") + e.what()));
    }
    if (g) {
      if (auto cycle = super_unit_cycle(*g)) {
        std::string text;
        for (AgentId a : *cycle) text += std::to_string(a) + "->";
        report.violations.push_back(agent_failure(cycle->front(), {},
                                                  "dagger: super-unit cycle " + text +
                                                      std::to_string(cycle->front())));
      } else {
        const auto ranks = compute_ranks(*g);
        for (auto& v : check_virtual_efx(inst, alloc, ranks).violations) {
          v.what = "dagger: " + v.what;
          report.violations.push_back(std::move(v));
        }
      }
    }
    for (AgentId i = 0; i < n; ++i) check_fully_relevant(inst, alloc, i, "dagger", report);
    return report;
  }
  if (name == "uparrow") {
    std::vector<bool> remaining = ctx.remaining.empty() ? std::vector<bool>(n, true) : ctx.remaining;
    report.corresponding.assign(n, std::nullopt);
    for (AgentId i = 0; i < n; ++i) {
      if (!remaining[i]) continue;
      const GoodSet& bundle = alloc.bundles[i];
      if (bundle.empty()) {
        report.corresponding[i] = i;
        continue;
      }
      const auto& type = inst.relevant_agents(*bundle.begin());
      bool typed = std::find(type.begin(), type.end(), i) != type.end() && type.size() <= 2;
      for (GoodId g : bundle) typed = typed && inst.relevant_agents(g) == type;
      if (!typed) {
        report.violations.push_back(agent_failure(
            i, bundle.ids(), "uparrow: bundle of agent " + std::to_string(i) + " is not of a single type"));
        continue;
      }
      report.corresponding[i] = type.size() == 1 ? i : (type[0] == i ? type[1] : type[0]);
    }
    std::optional<EnvyGraph> g;
    try {
      g = EnvyGraph::build(inst, alloc, remaining);
    } catch (const UndefinedWeight& e) {
      report.violations.push_back(agent_failure(e.i, {}, std::string("uparrow: ") + e.what()));
      return report;
    }
    if (auto cycle = super_unit_cycle(*g)) {
      report.violations.push_back(agent_failure(cycle->front(), {}, "uparrow: super-unit cycle"));
      return report;
    }
    const auto ranks = compute_ranks(*g);
    for (auto& v : check_virtual_efx(inst, alloc, ranks, &remaining).violations) {
      v.what = "uparrow: " + v.what;
      report.violations.push_back(std::move(v));
    }
    return report;
  }
  throw UnknownProperty("unknown property '" + std::string(name) + "'");
}

namespace {

// {-zero factors, product of the non-zero factors}
std::pair<Rational, Rational> nsw_parts(const Instance& inst, const Allocation& alloc,
                                        const std::vector<bool>& scope) {
  std::size_t zeros = 0;
  Rational product = 1;
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    if (!scope[i]) continue;
    Rational v = value(inst, i, alloc.bundles[i]);
    if (v == 0) {
      ++zeros;
    } else {
      product *= v;
    }
  }
  return {-Rational(static_cast<long>(zeros)), product};
}

}  // namespace

Potential potential(const Instance& inst, const Allocation& alloc, PotentialTag tag,
                    const PropertyContext& ctx) {
  const std::size_t n = inst.num_agents();
  const std::vector<bool> scope = ctx.remaining.empty() ? std::vector<bool>(n, true) : ctx.remaining;
  Potential p;
  p.tag = tag;
  switch (tag) {
    case PotentialTag::kCxxra: {
      Rational welfare = 0;
      std::size_t count = 0;
      for (AgentId i = 0; i < n; ++i) {
        welfare += value(inst, i, alloc.bundles[i]);
        count += alloc.bundles[i].size();
      }
      p.coords = {welfare, Rational(static_cast<long>(count))};
      break;
    }
    case PotentialTag::kSources: {
      const auto in = threshold_view(inst, alloc, Beta::kSqrt2).in_degrees();
      for (AgentId i = 0; i < n; ++i) {
        if (in[i] == 0) p.coords.push_back(value(inst, i, alloc.bundles[i]));
      }
      std::sort(p.coords.begin(), p.coords.end());
      break;
    }
    case PotentialTag::kNsw: {
      auto [z, prod] = nsw_parts(inst, alloc, scope);
      p.coords = {z, prod};
      break;
    }
    case PotentialTag::kPqrax: {
      std::size_t satisfied = 0;
      for (AgentId i = 0; i < n; ++i) satisfied += scope[i] ? 0 : 1;
      auto [z, prod] = nsw_parts(inst, alloc, scope);
      p.coords = {Rational(static_cast<long>(satisfied)), z, prod};
      break;
    }
  }
  return p;
}

std::vector<std::string> Potential::describe() const {
  std::vector<std::string> out;
  for (const auto& c : coords) out.push_back(to_string(c));
  if (tag == PotentialTag::kSources) out.emplace_back("inf");
  return out;
}

std::strong_ordering compare(const Potential& a, const Potential& b) {
  if (a.tag != b.tag) throw InvariantViolated("comparing potentials with different tags");
  const std::size_t common = std::min(a.coords.size(), b.coords.size());
  for (std::size_t k = 0; k < common; ++k) {
    if (a.coords[k] < b.coords[k]) return std::strong_ordering::less;
    if (a.coords[k] > b.coords[k]) return std::strong_ordering::greater;
  }
  if (a.coords.size() == b.coords.size()) return std::strong_ordering::equal;
  // Only the sentinel-terminated `sources` vectors differ in length: the
  // shorter one reaches +inf first.
  return a.coords.size() < b.coords.size() ? std::strong_ordering::greater : std::strong_ordering::less;
}

}  // namespace fairdiv
