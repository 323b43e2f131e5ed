#pragma once

// Synchronous TASEP on the 2K sites -K+1..K.
//
// A step has 2K+1 event slots, one per strip row r in [-K, K]:
//   r = -K            entry at site -K+1 (if empty), rate beta
//   -K < r < K        jump of the particle at site r to r+1 (if r+1 empty), rate alpha
//   r = K             exit from site K (if occupied), rate gamma
// All slots read the time-t configuration only.

#include <cstdint>
#include <span>
#include <vector>

#include "crossperc/random.hpp"
#include "crossperc/rational.hpp"
#include "crossperc/strip.hpp"

namespace crossperc {

/// Occupation of sites -K+1..K. Bit position p holds site p - K + 1.
class TasepState {
public:
  explicit TasepState(int half_width);
  TasepState(int half_width, std::vector<std::uint8_t> occupancy);

  /// Particles on sites -K+1..0, holes on 1..K.
  static TasepState step_configuration(int half_width);
  /// Inverse of encode(); bit p of `code` is position p.
  static TasepState decode(int half_width, std::uint32_t code);

  int half_width() const noexcept { return half_width_; }
  std::size_t sites() const noexcept { return occupancy_.size(); }
  bool occupied(int site) const;
  void set(int site, bool particle);
  std::span<const std::uint8_t> bits() const noexcept { return occupancy_; }
  int particle_count() const noexcept;
  /// Requires 2K <= 32.
  std::uint32_t encode() const;

  friend bool operator==(const TasepState &, const TasepState &) = default;

private:
  std::size_t position(int site) const;

  int half_width_;
  std::vector<std::uint8_t> occupancy_;
};

/// alpha: bulk jump, beta: entry at -K+1, gamma: exit at K.
struct TasepRates {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  static TasepRates uniform(double eps) { return {eps, eps, eps}; }
  void validate() const;
  /// True iff every rate lies strictly inside (0,1).
  bool interior() const noexcept;

  friend bool operator==(const TasepRates &, const TasepRates &) = default;
};

/// Whether slot `row` is enabled on `state` (entry needs an empty first
/// site, a jump needs a particle followed by a hole, exit needs a particle).
bool event_enabled(const TasepState &state, int row);

/// Fires every enabled slot with fire[row + K] != 0, simultaneously.
TasepState apply_events(const TasepState &state, std::span<const std::uint8_t> fire);

/// One step driven by 2K+1 uniforms in [0,1); slot fires iff u < rate.
TasepState tasep_step(const TasepState &state, const TasepRates &rates,
                      std::span<const double> draws);

/// One step consuming exactly 2K+1 raw draws (slot order) from `rng`;
/// slot fires iff BernoulliThreshold(rate).fires(draw).
TasepState tasep_step(const TasepState &state, const TasepRates &rates, SplitMix64 &rng);

/// Deterministic step: slot r fires iff the horizontal edge at row r is closed.
TasepState coupled_tasep_step(const TasepState &state, const EdgeColumn &col);

inline constexpr int kMaxDenseHalfWidth = 7;

/// Row-compressed transition matrix over encoded states.
template <class Scalar> struct TransitionTable {
  int half_width = 0;
  std::vector<std::uint32_t> row_start;
  std::vector<std::uint32_t> target;
  std::vector<Scalar> probability;

  std::size_t states() const noexcept { return row_start.empty() ? 0 : row_start.size() - 1; }
};

/// Sums over all 2^(enabled events) outcomes of every state. K <= 7.
TransitionTable<double> build_transition_table(int half_width, const TasepRates &rates);
/// Same with every rate equal to the rational `eps`.
TransitionTable<Rational> build_transition_table(int half_width, const Rational &eps);

/// Encoded states with site 0 occupied and site 1 empty.
bool is_pair_state(int half_width, std::uint32_t code) noexcept;

} // namespace crossperc
