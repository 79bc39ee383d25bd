#pragma once

#include <cmath>
#include <cstdint>

namespace trigraph {

// Counter-based generator: output i of stream s under master seed m is
// mix(key(m, s) + i * GOLDEN), with mix the SplitMix64 finalizer. Streams
// derived from the same master seed are independent for all practical
// purposes and replicates can be split without sharing state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed) ^ mix(stream ^ 0x9e3779b97f4a7c15ull))) {}

  CounterRng split(std::uint64_t stream) const {
    CounterRng r(0);
    r.key_ = mix(key_ ^ mix(stream + 0x165667b19e3779f9ull));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() {
    return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull);
  }

  // Uniform in [0,1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  // Number of failures before the next success of a Bern(p) sequence;
  // used to skip over unselected slots. Returns a huge value when p == 0.
  std::uint64_t geometric_skip(double p) {
    if (p <= 0.0) return UINT64_MAX;
    if (p >= 1.0) return 0;
    double u = 1.0 - uniform();  // in (0,1]
    return std::uint64_t(std::floor(std::log(u) / std::log1p(-p)));
  }

  // std::uniform_random_bit_generator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }
  result_type operator()() { return next_u64(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace trigraph
