#pragma once

// Counter-based random streams (Philox4x32-10).
//
// A stream is identified by a 64-bit key and a 64-bit stream id; the
// generator output at position i is a pure function of (key, stream, i).
// Trial t under master seed s always uses stream_for(s, t), whatever thread
// happens to run it.

#include <array>
#include <cstdint>
#include <limits>

namespace erw {

class Philox4x32 {
 public:
  using result_type = std::uint64_t;

  Philox4x32() : Philox4x32(0, 0) {}
  Philox4x32(std::uint64_t key, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (next_ == 2) {
      refill();
    }
    return buffer_[next_++];
  }

  /// Raw block function: ten Philox rounds over a 128-bit counter.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  void refill() {
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    const auto out = block(ctr, key_);
    buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
    buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    ++counter_;
    next_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int next_ = 2;
};

using Rng = Philox4x32;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stream for trial `trial` under `master_seed`.
inline Rng stream_for(std::uint64_t master_seed, std::uint64_t trial) {
  return Rng(mix64(master_seed), trial);
}

template <class G>
concept RandomSource = std::uniform_random_bit_generator<G> &&
                       G::min() == 0 && G::max() == std::numeric_limits<std::uint64_t>::max();

/// Uniform double in [0, 1) with 53 random bits.
template <RandomSource G>
inline double uniform01(G& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// true with probability `prob`; prob = 0 and prob = 1 are exact.
template <RandomSource G>
inline bool bernoulli(G& gen, double prob) {
  return uniform01(gen) < prob;
}

/// Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
template <RandomSource G>
inline std::uint64_t uniform_index(G& gen, std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(gen()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(gen()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace erw
