#pragma once

#include <cstdint>
#include <random>

namespace wth {

/// Counter-based stream handle: the same (seed, stream_id) pair always
/// produces the same draw sequence, so Monte Carlo trials keyed by trial
/// index reproduce bit-identically under any worker count.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(mix(mix(seed ^ 0x9e3779b97f4a7c15ull) + stream_id)) {}

  double normal() { return normal_(engine_); }

  /// Uniform on (0, 1]; maps to fading draws on (1, 2].
  double uniform01() {
    return 1.0 - uniform_(engine_);  // uniform_ is [0,1)
  }

  /// Uniform integer in [lo, hi].
  long long uniform_int(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace wth
