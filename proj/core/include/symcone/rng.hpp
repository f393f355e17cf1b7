#pragma once

#include <cstdint>
#include <limits>

namespace symcone {

/// Counter-based generator keyed by (seed, stream, index).
///
/// Every key addresses an independent sequence; the n-th output is a
/// SplitMix64 finaliser of key + n * golden-gamma, so any draw can be
/// regenerated without replaying earlier ones. Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stream identifiers reserved by the library's experiments.
namespace streams {
inline constexpr std::uint64_t kFirstSample = 0;
inline constexpr std::uint64_t kSecondSample = 1;
inline constexpr std::uint64_t kPermutation = 2;
inline constexpr std::uint64_t kProjection = 3;
inline constexpr std::uint64_t kResample = 4;
inline constexpr std::uint64_t kPairs = 5;
}  // namespace streams

}  // namespace symcone
