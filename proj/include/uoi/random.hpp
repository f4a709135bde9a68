#pragma once

#include <array>
#include <cstdint>

namespace uoi {

/// (master_seed, stream_id) fully determines every random draw. Distinct
/// stream ids give independent streams, so resampled tasks can be scheduled
/// in any order on any number of threads without changing results.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Derives an independent child seed for task slot `slot`. Used to give
/// each bootstrap / subsample / repetition its own stream.
SeedSpec derive_stream(const SeedSpec& parent, std::uint64_t slot);

/// xoshiro256++ with SplitMix64 state expansion. Fixed, portable generator:
/// identical (master_seed, stream_id) produce bit-identical draws on every
/// platform, which std::uniform_*_distribution does not guarantee.
class RngStream {
 public:
  explicit RngStream(const SeedSpec& seed);

  std::uint64_t next_u64();

  /// Unbiased integer in [0, bound), bound >= 1. Rejection sampling.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// [0, 1) with 53 random mantissa bits.
  double uniform01();

  /// Standard normal via Box-Muller (fresh pair per call, second discarded).
  double normal();

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace uoi
