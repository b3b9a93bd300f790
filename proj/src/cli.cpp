#include "fairdiv/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "fairdiv/algorithms.hpp"
#include "fairdiv/batch.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/generator.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracle.hpp"

namespace fairdiv::cli {

namespace {

struct Usage : Error {
  using Error::Error;
};

std::optional<std::size_t> env_step_limit() {
  const char* raw = std::getenv("FAIRDIV_STEP_LIMIT");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18) {
    throw Usage("FAIRDIV_STEP_LIMIT must be a non-negative integer, got '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

Algorithm algorithm_flag(const std::string& name) {
  const auto alg = parse_algorithm(name);
  if (!alg) throw Usage("unknown algorithm '" + name + "' (cxxra, sqrt2-ra, sqrt2-pq, pqrax)");
  return *alg;
}

Model model_flag(const std::string& name) {
  const auto m = parse_model(name);
  if (!m) throw Usage("unknown model '" + name + "' (restricted_p2, restricted_any, additive_infty1, additive_pq)");
  return *m;
}

io::InstanceFile load_instance(const std::string& path) { return io::parse_instance(io::read_file(path)); }

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

std::string ids(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "}";
}

void print_report(std::ostream& out, const std::string& check, const FairnessReport& r) {
  if (r.pass()) {
    out << "PASS " << check << "\n";
    return;
  }
  out << "FAIL " << check << ": " << r.violations.size() << " violation(s)\n";
  for (const Violation& v : r.violations) {
    out << "  agent " << v.i << " -> agent " << v.j << " witness " << ids(v.witness) << " margin "
        << to_string(v.margin) << ": " << v.what << "\n";
  }
}

struct GenFlags {
  std::string model;
  std::size_t agents = 0;
  std::size_t goods = 0;
  std::uint64_t seed = 0;
  std::uint64_t lo = 1;
  std::uint64_t hi = 10;
  std::optional<std::size_t> p;
  std::optional<std::size_t> q;
  std::string out;
};

int cmd_gen(const GenFlags& f, std::ostream& out) {
  GenSpec spec;
  spec.model = model_flag(f.model);
  spec.n = f.agents;
  spec.m = f.goods;
  spec.seed = f.seed;
  spec.lo = f.lo;
  spec.hi = f.hi;
  spec.p = f.p;
  spec.q = f.q;
  const Instance inst = generate(spec);
  emit(out, f.out, io::serialize_instance(inst, model_name(spec.model)));
  return kOk;
}

struct RunFlags {
  std::string alg;
  std::string in;
  std::string out;
  std::string trace;
};

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  const Algorithm alg = algorithm_flag(f.alg);
  const io::InstanceFile file = load_instance(f.in);
  RunOptions opts;
  opts.step_limit = env_step_limit();
  const RunResult res = run_algorithm(file.instance, alg, opts);
  emit(out, f.out, io::serialize_allocation(res.allocation));
  if (!f.trace.empty()) {
    std::string lines;
    for (const TraceEntry& e : lifted_trace(file.instance, res)) lines += io::trace_line(e) + "\n";
    io::write_file(f.trace, lines);
  }
  err << "algorithm: " << algorithm_name(alg) << "\n"
      << "rule applications: " << (res.trace.empty() ? 0 : res.trace.size() - 1) << "\n"
      << "pre-final pool size: " << res.pre_final_pool << "\n";
  return kOk;
}

struct VerifyFlags {
  std::string in;
  std::string alloc;
  std::string check;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  const io::InstanceFile file = load_instance(f.in);
  const Allocation alloc = io::parse_allocation(io::read_file(f.alloc), file.instance);
  FairnessReport r;
  if (f.check == "efx") {
    r = check_alpha_efx(file.instance, alloc, Beta::kOne);
  } else if (f.check == "ef2x") {
    r = check_ef2x(file.instance, alloc);
  } else if (f.check == "efx-sqrt2") {
    r = check_alpha_efx(file.instance, alloc, Beta::kSqrt2);
  } else if (f.check.starts_with("prop:")) {
    r = check_named_property(file.instance, alloc, f.check.substr(5));
  } else {
    throw Usage("unknown check '" + f.check + "' (efx, ef2x, efx-sqrt2, prop:<name>)");
  }
  print_report(out, f.check, r);
  return r.pass() ? kOk : kCheckFailed;
}

struct OracleFlags {
  std::string in;
  std::string check;
  std::string alloc;
  std::uint64_t budget = oracle::EnumerationBudget{}.max_assignments;
};

int cmd_oracle(const OracleFlags& f, std::ostream& out) {
  const io::InstanceFile file = load_instance(f.in);
  const Instance& inst = file.instance;
  const oracle::EnumerationBudget budget{f.budget};
  if (f.check == "efx-exists") {
    const auto found = oracle::exists_efx(inst, budget);
    if (!found) {
      out << "no complete EFX allocation\n";
      return kCheckFailed;
    }
    out << "EFX allocation found\n" << io::serialize_allocation(*found);
    return kOk;
  }
  if (f.check == "max-nsw") {
    const Allocation best = oracle::max_nsw_complete(inst, budget);
    std::size_t zeros = 0;
    Rational prod(1);
    for (AgentId i = 0; i < inst.num_agents(); ++i) {
      const Rational v = value(inst, i, best.bundles[i]);
      if (v == 0) {
        ++zeros;
      } else {
        prod *= v;
      }
    }
    out << "zero factors: " << zeros << "\nproduct of non-zero factors: " << to_string(prod) << "\n"
        << io::serialize_allocation(best);
    return kOk;
  }
  if (f.check == "rank") {
    if (f.alloc.empty()) throw Usage("--check rank needs --alloc");
    const Allocation alloc = io::parse_allocation(io::read_file(f.alloc), inst);
    for (AgentId i = 0; i < inst.num_agents(); ++i) {
      const auto r = oracle::brute_rank(inst, alloc, i);
      out << "agent " << i << ": " << to_string(r.rank) << " path";
      for (std::size_t k = 0; k < r.path.size(); ++k) out << (k ? " -> " : " ") << r.path[k];
      out << "\n";
    }
    return kOk;
  }
  throw Usage("unknown oracle check '" + f.check + "' (efx-exists, max-nsw, rank)");
}

struct BenchFlags {
  std::string alg;
  std::string model;
  std::size_t count = 100;
  std::optional<std::size_t> agents;
  std::optional<std::size_t> goods;
  std::uint64_t seed = 0;
  std::uint64_t lo = 1;
  std::uint64_t hi = 10;
  int threads = 0;
  bool serial = false;
  std::string dump;
};

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  BatchSpec spec;
  spec.algorithm = algorithm_flag(f.alg);
  if (!f.model.empty()) spec.model = model_flag(f.model);
  spec.count = f.count;
  spec.n = f.agents;
  spec.m = f.goods;
  spec.seed = f.seed;
  spec.lo = f.lo;
  spec.hi = f.hi;
  spec.run.step_limit = env_step_limit();
  const auto start = std::chrono::steady_clock::now();
  const auto items = f.serial ? run_batch_serial(spec) : run_batch_parallel(spec, f.threads);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  std::size_t passed = 0;
  std::size_t errors = 0;
  std::map<std::size_t, std::size_t> pools;
  std::map<std::string, std::size_t> rules;
  std::string dump;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const BatchItem& it = items[k];
    if (!it.error.empty()) {
      ++errors;
      err << "instance " << k << " (seed " << it.spec.seed << "): " << it.error << "\n";
      continue;
    }
    passed += it.passed ? 1 : 0;
    ++pools[it.pre_final_pool];
    for (const auto& [name, c] : it.rule_counts) rules[name] += c;
    if (!f.dump.empty()) {
      std::string a = io::serialize_allocation(it.allocation);
      std::erase(a, '\n');
      dump += a + "\n";
    }
  }
  if (!f.dump.empty()) io::write_file(f.dump, dump);
  const Model model = spec.model.value_or(default_model(spec.algorithm));
  out << "algorithm: " << algorithm_name(spec.algorithm) << "\n"
      << "model: " << model_name(model) << "\n"
      << "seed: " << spec.seed << "\n"
      << "pass rate: " << passed << "/" << items.size() << "\n"
      << "errors: " << errors << "\n"
      << "pre-final pool sizes:";
  for (const auto& [size, c] : pools) out << " " << size << ":" << c;
  out << "\nrule applications:";
  for (const auto& [name, c] : rules) out << " " << name << "=" << c;
  out << "\n";
  err << "wall time: " << elapsed.count() << " ms (" << (f.serial || !parallel_available() ? "serial" : "parallel")
      << ")\n";
  return passed == items.size() ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair division of indivisible goods: EFX-style allocation algorithms"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate a random instance");
  g->add_option("--model", gen.model, "restricted_p2 | restricted_any | additive_infty1 | additive_pq")->required();
  g->add_option("--agents", gen.agents, "Number of agents")->required();
  g->add_option("--goods", gen.goods, "Number of goods")->required();
  g->add_option("--seed", gen.seed, "64-bit seed");
  g->add_option("--value-lo", gen.lo, "Smallest positive value");
  g->add_option("--value-hi", gen.hi, "Largest value");
  g->add_option("--p", gen.p, "Max agents per good");
  g->add_option("--q", gen.q, "Max goods shared by an agent pair");
  g->add_option("--out", gen.out, "Output file (stdout when absent)");

  RunFlags run;
  auto* r = app.add_subcommand("run", "Run an algorithm on an instance");
  r->add_option("--alg", run.alg, "cxxra | sqrt2-ra | sqrt2-pq | pqrax")->required();
  r->add_option("--in", run.in, "Instance file")->required();
  r->add_option("--out", run.out, "Allocation file (stdout when absent)");
  r->add_option("--trace", run.trace, "JSON-lines trace file");

  VerifyFlags ver;
  auto* v = app.add_subcommand("verify", "Check an allocation");
  v->add_option("--in", ver.in, "Instance file")->required();
  v->add_option("--alloc", ver.alloc, "Allocation file")->required();
  v->add_option("--check", ver.check, "efx | ef2x | efx-sqrt2 | prop:<ddagger|section|dagger|uparrow>")->required();

  OracleFlags orc;
  auto* o = app.add_subcommand("oracle", "Brute-force answers for small instances");
  o->add_option("--in", orc.in, "Instance file")->required();
  o->add_option("--check", orc.check, "efx-exists | max-nsw | rank")->required();
  o->add_option("--alloc", orc.alloc, "Allocation file (rank)");
  o->add_option("--budget", orc.budget, "Maximum number of enumerated assignments");

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "Run and verify many seeded instances");
  b->add_option("--alg", bench.alg, "cxxra | sqrt2-ra | sqrt2-pq | pqrax")->required();
  b->add_option("--model", bench.model, "Generator model (default depends on --alg)");
  b->add_option("--count", bench.count, "Number of instances");
  b->add_option("--agents", bench.agents, "Fixed agent count (default: drawn from 2..8)");
  b->add_option("--goods", bench.goods, "Fixed good count (default: drawn from n..2n+4)");
  b->add_option("--seed", bench.seed, "Base seed");
  b->add_option("--value-lo", bench.lo, "Smallest positive value");
  b->add_option("--value-hi", bench.hi, "Largest value");
  b->add_option("--threads", bench.threads, "Worker threads (0: runtime default)");
  b->add_flag("--serial", bench.serial, "Run on one thread");
  b->add_option("--dump", bench.dump, "Write every allocation, one JSON object per line");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (*g) return cmd_gen(gen, out);
    if (*r) return cmd_run(run, out, err);
    if (*v) return cmd_verify(ver, out);
    if (*o) return cmd_oracle(orc, out);
    if (*b) return cmd_bench(bench, out, err);
  } catch (const ClassMismatch& e) {
    err << "class mismatch: " << e.what() << "\n";
    return kClassMismatch;
  } catch (const InvariantViolated& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const SuperUnitCycle& e) {
    err << "super-unit cycle: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const UndefinedWeight& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace fairdiv::cli
