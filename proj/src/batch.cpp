#include "fairdiv/batch.hpp"

#include <exception>

#ifdef FAIRDIV_HAVE_OPENMP
#include <omp.h>
#endif

namespace fairdiv {

Model default_model(Algorithm alg) {
  switch (alg) {
    case Algorithm::kSqrt2Ra:
      return Model::kRestrictedAny;
    case Algorithm::kPqrax:
      return Model::kRestrictedP2;
    case Algorithm::kCxxra:
    case Algorithm::kSqrt2Pq:
      break;
  }
  return Model::kAdditiveInfty1;
}

GenSpec instance_spec(const BatchSpec& spec, std::size_t k) {
  std::uint64_t x = spec.seed + k;
  const std::uint64_t derived = splitmix64(x);
  Xoshiro256 rng(derived);
  GenSpec g;
  g.model = spec.model.value_or(default_model(spec.algorithm));
  g.n = spec.n ? *spec.n : rng.uniform(2, 8);
  g.m = spec.m ? *spec.m : rng.uniform(g.n, 2 * g.n + 4);
  g.lo = spec.lo;
  g.hi = spec.hi;
  g.seed = derived;
  return g;
}

BatchItem run_one(const BatchSpec& spec, std::size_t k) {
  BatchItem item;
  item.spec = instance_spec(spec, k);
  try {
    const Instance inst = generate(item.spec);
    const RunResult res = run_algorithm(inst, spec.algorithm, spec.run);
    item.passed = verify_guarantee(inst, spec.algorithm, res.allocation).pass();
    item.pre_final_pool = res.pre_final_pool;
    item.rule_counts = rule_counts(res.trace);
    item.allocation = res.allocation;
  } catch (const std::exception& e) {
    item.error = e.what();
  }
  return item;
}

std::vector<BatchItem> run_batch_serial(const BatchSpec& spec) {
  std::vector<BatchItem> out(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) out[k] = run_one(spec, k);
  return out;
}

std::vector<BatchItem> run_batch_parallel(const BatchSpec& spec, int threads) {
#ifdef FAIRDIV_HAVE_OPENMP
  std::vector<BatchItem> out(spec.count);
  const auto count = static_cast<std::int64_t>(spec.count);
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t k = 0; k < count; ++k) {
    // run_one catches everything; exceptions must not leave the region.
    out[static_cast<std::size_t>(k)] = run_one(spec, static_cast<std::size_t>(k));
  }
  return out;
#else
  (void)threads;
  return run_batch_serial(spec);
#endif
}

bool parallel_available() {
#ifdef FAIRDIV_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace fairdiv
