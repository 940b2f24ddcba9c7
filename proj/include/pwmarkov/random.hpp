#pragma once

#include <cstdint>
#include <limits>

#include "pwmarkov/rational.hpp"

namespace pwm {

/// Counter-based generator: the k-th draw of stream (seed, stream) is a pure
/// function of (seed, stream, k), so walks can run on any thread in any order.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(mix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

  result_type operator()() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  std::uint64_t counter() const { return counter_; }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform integer in [0, n) by rejection; n >= 1.
std::uint64_t uniform_below(StreamRng& rng, std::uint64_t n);
BigInt uniform_below(StreamRng& rng, const BigInt& n);

}  // namespace pwm
