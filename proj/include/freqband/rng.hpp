#pragma once

#include <cstdint>
#include <random>

namespace freqband {

// 64-bit finalizer (splitmix64 step), used to spread user seeds and to
// derive independent sub-streams from (seed, tag...) tuples.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag0 = 0,
                                 std::uint64_t tag1 = 0) noexcept {
  return mix64(mix64(mix64(base) ^ (tag0 + 0x51afd7ed558ccd25ULL)) ^
               (tag1 + 0x6e6d1f0a5c3e9bb9ULL));
}

// Deterministic stream of standard normal variates keyed by a single seed.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(mix64(seed)) {}
  double next() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace freqband
