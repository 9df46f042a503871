#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Portable generator: SplitMix64 expands a 64-bit seed into the 256-bit
// state of xoshiro256**. Uniform doubles take the top 53 bits. Categorical
// draws walk the cumulative weights and return the first index whose running
// sum exceeds u (the last index absorbs rounding).
namespace beliefs::rng {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::size_t pick(std::span<const double> weights) {
    const double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
};

// Stream constants keep the network and concept draws independent.
inline constexpr std::uint64_t kNetworkStream = 0x6A09E667F3BCC908ULL;
inline constexpr std::uint64_t kConceptStream = 0xBB67AE8584CAA73BULL;

inline Xoshiro256 stream(std::uint64_t seed, std::uint64_t constant) {
  return Xoshiro256(seed ^ constant);
}

}  // namespace beliefs::rng
