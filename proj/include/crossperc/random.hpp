#pragma once

#include <cstdint>
#include <limits>

namespace crossperc {

/// SplitMix64 finalizer (Stafford variant 13). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
///
/// Chosen over std::mt19937_64 because every strip column and every replica
/// gets its own stream, and a 64-bit state makes stream construction free.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

private:
  std::uint64_t state_;
};

/// Seed of sub-stream `index` of `master`:
///   mix64(master ^ mix64(index + kGoldenGamma)).
/// Used for (seed, replica) and (replica seed, column) pairs alike.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + kGoldenGamma));
}

constexpr SplitMix64 derive_stream(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64(derive_seed(master, index));
}

/// Decides Bernoulli(p) events from raw 64-bit draws: an event fires iff
/// draw < floor(p * 2^64), with p == 1 firing on every draw. Exact for any
/// double p >= 2^-11 and platform independent.
class BernoulliThreshold {
public:
  explicit BernoulliThreshold(double p);

  bool fires(std::uint64_t draw) const noexcept { return always_ || draw < threshold_; }
  double probability() const noexcept { return p_; }

private:
  double p_;
  std::uint64_t threshold_;
  bool always_;
};

/// Uniform double in [0,1) from the top 53 bits of a draw.
constexpr double to_unit_interval(std::uint64_t draw) noexcept {
  return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

} // namespace crossperc
