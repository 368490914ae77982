#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace sparsekit {

using Rng = std::mt19937_64;

/// Identifies one unit of work in a sweep.
struct JobKey {
  std::string graph_id;
  std::string sparsifier;
  double rho = 0.0;
  std::uint32_t repetition = 0;
};

/**
 * Seed for one job. The generator it produces depends only on master_seed and
 * job_key, never on scheduling, so results are independent of worker count.
 */
struct RunSeed {
  std::uint64_t master_seed = 0;
  JobKey job_key;

  /// 64-bit stream seed for (master_seed, job_key, salt).
  std::uint64_t derive(std::string_view salt = {}) const;
  Rng rng(std::string_view salt = {}) const { return Rng(derive(salt)); }

  /// Seed whose job key only differs in the repetition index.
  static RunSeed simple(std::uint64_t master, std::uint32_t repetition = 0) {
    return RunSeed{master, JobKey{"", "", 0.0, repetition}};
  }
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

}  // namespace sparsekit
