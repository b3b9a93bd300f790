#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/generator.hpp"

namespace fairdiv {

struct BatchSpec {
  Algorithm algorithm = Algorithm::kCxxra;
  std::optional<Model> model;     // default_model(algorithm) when unset
  std::size_t count = 0;
  std::optional<std::size_t> n;   // else drawn from [2, 8]
  std::optional<std::size_t> m;   // else drawn from [n, 2n + 4]
  std::uint64_t seed = 0;
  std::uint64_t lo = 1;
  std::uint64_t hi = 10;
  RunOptions run;
};

struct BatchItem {
  GenSpec spec;
  bool passed = false;  // guarantee verified on a complete allocation
  std::string error;    // non-empty when the run threw
  std::size_t pre_final_pool = 0;
  std::map<std::string, std::size_t> rule_counts;
  Allocation allocation;
};

Model default_model(Algorithm alg);

// Instance k of the batch: seed + k is fed through splitmix64 once, and the
// result drives both the size draw and the generator.
GenSpec instance_spec(const BatchSpec& spec, std::size_t k);

BatchItem run_one(const BatchSpec& spec, std::size_t k);

// Same results in the same order; the parallel version uses OpenMP when it is
// available and falls back to the serial loop otherwise. threads = 0 keeps the
// runtime default.
std::vector<BatchItem> run_batch_serial(const BatchSpec& spec);
std::vector<BatchItem> run_batch_parallel(const BatchSpec& spec, int threads = 0);

bool parallel_available();

}  // namespace fairdiv
