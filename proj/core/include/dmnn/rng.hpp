#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dmnn {

// Derives an independent child seed from (seed, salt). splitmix64 finalizer;
// distinct salts give decorrelated streams even for adjacent master seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Deterministic random source. The distribution transforms live here instead
// of std::*_distribution so that a given seed produces the same draw sequence
// on every toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller (two uniforms per draw, cosine branch).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(gen_() % n);
  }

  // Fisher-Yates shuffle driven by this stream.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[index(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dmnn
