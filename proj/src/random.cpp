#include "uoi/random.hpp"

#include <cmath>

namespace uoi {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

SeedSpec derive_stream(const SeedSpec& parent, std::uint64_t slot) {
  RngStream mixer(SeedSpec{parent.master_seed, parent.stream_id ^ rotl(slot, 17) ^ 0xA5A5A5A5A5A5A5A5ULL});
  return SeedSpec{mixer.next_u64(), slot};
}

RngStream::RngStream(const SeedSpec& seed) {
  std::uint64_t x = seed.master_seed ^ (0x9E3779B97F4A7C15ULL * (seed.stream_id + 1));
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  // Rejection below the largest multiple of bound keeps draws unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  // Box-Muller; u1 shifted away from zero so the log is finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return radius * std::cos(2.0 * M_PI * u2);
}

}  // namespace uoi
