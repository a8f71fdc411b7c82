#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace fairkc {

/// SplitMix64 finalizer. Stateless; used for seed expansion and for deriving
/// independent per-trial streams from (master_seed, trial_index).
constexpr std::uint64_t hash64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded xoshiro256** generator. Every draw is a pure function of the seed,
/// independent of platform and standard library, so results are reproducible
/// bit for bit across machines and thread schedules.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& word : state_) {
      z = hash64(z);
      word = z;
    }
  }

  /// Stream for one Monte-Carlo trial. Trials derive their randomness from
  /// (master_seed, trial_index) only, never from execution order.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return Rng(hash64(hash64(master_seed) + trial_index));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 bits of precision.
  double uniform_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe to feed into a logarithm.
  double uniform_open_closed() { return 1.0 - uniform_unit(); }

  /// Unbiased integer in [0, n). Lemire's multiply-shift rejection method.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Fisher-Yates shuffle using this stream's own bounded draws.
  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace fairkc
