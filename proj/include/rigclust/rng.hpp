#pragma once

#include <cstdint>
#include <limits>

namespace rigclust {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Seed of child stream `index` under `parent`. Pure function, used for
/// replicate seeds and per-attribute / per-actor streams.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent ^ 0x6a09e667f3bcc909ULL) + (index + 1) * kGoldenGamma);
}

/// 53-bit uniform in [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based SplitMix64 stream. Element `i` of the stream is
/// mix64(key + (i + 1) * gamma), so any element can be addressed directly
/// with at(), and the sequential interface satisfies
/// UniformRandomBitGenerator for use with <random> distributions.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Stream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept { return at(counter_++); }

  constexpr result_type at(std::uint64_t i) const noexcept {
    return mix64(key_ + (i + 1) * kGoldenGamma);
  }

  /// Uniform on the open interval (0, 1).
  double open_unit() noexcept {
    double u;
    do {
      u = to_unit((*this)());
    } while (u == 0.0);
    return u;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rigclust
