#include <array>
#include <utility>

#include "fairdiv/algorithms.hpp"

namespace fairdiv {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 4> kNames{{
    {Algorithm::kCxxra, "cxxra"},
    {Algorithm::kSqrt2Ra, "sqrt2-ra"},
    {Algorithm::kSqrt2Pq, "sqrt2-pq"},
    {Algorithm::kPqrax, "pqrax"},
}};

template <class State>
struct Driver {
  using StateType = State;
  std::vector<Rule<State>> (*rules)(const Instance&, bool);
  RuleOutcome<State> (*final_step)(const Instance&, const State&, bool);
  Potential (*potential_of)(const Instance&, const State&);
};

template <class State>
LoopResult<State> drive(const Driver<State>& d, const Instance& inst, State start, bool checked,
                        std::size_t limit) {
  const auto rules = d.rules(inst, checked);
  std::function<RuleOutcome<State>(const State&)> fin = [&](const State& s) {
    return d.final_step(inst, s, checked);
  };
  auto phi = [&](const State& s) { return d.potential_of(inst, s); };
  return run_loop(std::move(start), rules, fin, phi, limit);
}

template <class State>
State initial_state(const Allocation& seed) {
  if constexpr (requires(State s) { s.remaining; }) {
    return State{seed, std::vector<bool>(seed.bundles.size(), true)};
  } else {
    return State{seed};
  }
}

template <class F>
auto dispatch(Algorithm alg, F&& f) {
  switch (alg) {
    case Algorithm::kCxxra:
      return f(Driver<cxxra::State>{cxxra::rules, cxxra::final_step, cxxra::potential_of});
    case Algorithm::kSqrt2Ra:
      return f(Driver<sqrt2_ra::State>{sqrt2_ra::rules, sqrt2_ra::final_step, sqrt2_ra::potential_of});
    case Algorithm::kSqrt2Pq:
      return f(Driver<sqrt2_pq::State>{sqrt2_pq::rules, sqrt2_pq::final_step, sqrt2_pq::potential_of});
    case Algorithm::kPqrax:
      break;
  }
  return f(Driver<pqrax::State>{pqrax::rules, pqrax::final_step, pqrax::potential_of});
}

std::vector<GoodId> map_ids(const std::vector<std::size_t>& ids, const std::vector<std::size_t>& of) {
  std::vector<GoodId> out;
  out.reserve(ids.size());
  for (auto k : ids) out.push_back(of[k]);
  return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm alg) {
  for (const auto& [a, name] : kNames) {
    if (a == alg) return name;
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& [a, n] : kNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all{Algorithm::kCxxra, Algorithm::kSqrt2Ra, Algorithm::kSqrt2Pq,
                                          Algorithm::kPqrax};
  return all;
}

void check_class(const Instance& inst, Algorithm alg) {
  const std::string name(algorithm_name(alg));
  const BoundProfile b = classify_bounds(inst);
  auto restricted = [&] {
    try {
      return check_restricted_additive(inst).has_value();
    } catch (const DegenerateInstance&) {
      return false;
    }
  };
  switch (alg) {
    case Algorithm::kCxxra:
    case Algorithm::kSqrt2Pq:
      if (b.q > 1) throw ClassMismatch(name + " needs every agent pair to share at most one relevant good");
      return;
    case Algorithm::kSqrt2Ra:
      if (!restricted()) throw ClassMismatch(name + " needs restricted additive valuations");
      return;
    case Algorithm::kPqrax:
      if (!restricted()) throw ClassMismatch(name + " needs restricted additive valuations");
      if (b.p > 2) throw ClassMismatch(name + " needs every good to be relevant to at most two agents");
      return;
  }
}

RunResult run_algorithm(const Instance& inst, Algorithm alg, const RunOptions& opts) {
  check_class(inst, alg);
  RunResult out;
  out.algorithm = alg;
  out.seed = seed_allocation(inst);
  out.reduction = reduce(inst, out.seed);
  const Reduction& red = out.reduction;
  if (red.agent_of.empty()) {
    out.pre_final_pool = red.seed.pool.size();
    out.allocation = lift(inst, out.seed, red, red.seed);
    return out;
  }
  const std::size_t limit = opts.step_limit.value_or(default_step_limit(red.instance));
  Allocation local = dispatch(alg, [&](const auto& d) {
    using State = typename std::decay_t<decltype(d)>::StateType;
    auto res = drive(d, red.instance, initial_state<State>(red.seed), opts.check_invariants, limit);
    out.trace = std::move(res.trace);
    return res.state.allocation;
  });
  out.pre_final_pool = out.trace.size() >= 2 ? out.trace[out.trace.size() - 2].allocation.pool.size()
                                             : red.seed.pool.size();
  out.allocation = lift(inst, out.seed, red, local);
  return out;
}

Trace lifted_trace(const Instance& inst, const RunResult& result) {
  const Reduction& red = result.reduction;
  Trace out;
  for (const TraceEntry& e : result.trace) {
    TraceEntry t = e;
    t.agents = map_ids(e.agents, red.agent_of);
    t.goods = map_ids(e.goods, red.good_of);
    Allocation a;
    a.bundles.resize(inst.num_agents());
    for (auto [agent, g] : result.seed.prematched) a.bundles[agent].insert(g);
    for (std::size_t k = 0; k < e.allocation.bundles.size(); ++k) {
      for (GoodId g : e.allocation.bundles[k]) a.bundles[red.agent_of[k]].insert(red.good_of[g]);
    }
    for (GoodId g : e.allocation.pool) a.pool.insert(red.good_of[g]);
    t.allocation = std::move(a);
    out.push_back(std::move(t));
  }
  return out;
}

bool replay(const Instance& inst, const RunResult& result) {
  (void)inst;
  const Reduction& red = result.reduction;
  if (red.agent_of.empty()) return result.trace.empty();
  return dispatch(result.algorithm, [&](const auto& d) {
    using State = typename std::decay_t<decltype(d)>::StateType;
    const auto rules = d.rules(red.instance, false);
    State s = initial_state<State>(red.seed);
    for (const TraceEntry& e : result.trace) {
      if (e.rule == "final") {
        s = d.final_step(red.instance, s, false).next;
      } else {
        bool applied = false;
        for (const auto& rule : rules) {
          if (rule.name != e.rule) continue;
          auto o = rule.apply(s);
          if (!o) return false;
          s = std::move(o->next);
          applied = true;
        }
        if (!applied) return false;
      }
      if (!(s.allocation == e.allocation)) return false;
      if (compare(d.potential_of(red.instance, s), e.phi) != std::strong_ordering::equal) return false;
    }
    return true;
  });
}

FairnessReport verify_guarantee(const Instance& inst, Algorithm alg, const Allocation& alloc) {
  FairnessReport r;
  switch (alg) {
    case Algorithm::kCxxra:
      r = check_ef2x(inst, alloc);
      break;
    case Algorithm::kSqrt2Ra:
    case Algorithm::kSqrt2Pq:
      r = check_alpha_efx(inst, alloc, Beta::kSqrt2);
      break;
    case Algorithm::kPqrax:
      r = check_alpha_efx(inst, alloc, Beta::kOne);
      break;
  }
  if (!alloc.complete()) {
    r.violations.push_back(Violation{0, 0, alloc.pool.ids(), Rational(0), "allocation is not complete"});
  }
  return r;
}

std::map<std::string, std::size_t> rule_counts(const Trace& trace) {
  std::map<std::string, std::size_t> out;
  for (const auto& e : trace) ++out[e.rule];
  return out;
}

}  // namespace fairdiv
