#pragma once

// Event A on the box [0,n] x [-K,K] of a Standard-model strip: every unit
// square has at most one closed side.

#include <cstdint>
#include <optional>

#include "crossperc/strip.hpp"

namespace crossperc {

struct EventAEstimate {
  int half_width = 0;
  std::int64_t n = 0;
  double eps = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;  ///< samples outside A
  double p_hat = 0.0;
  double stderr_p = 0.0;
  double bound = 0.0;          ///< 22 K n eps^2
  std::uint64_t seed = 0;

  /// p_hat - sigmas * stderr <= bound.
  bool within(double sigmas) const noexcept { return p_hat - sigmas * stderr_p <= bound; }
};

/// Sample s is sample_strip(Standard K, eps, n, derive_seed(seed, s)).
EventAEstimate estimate_event_A_failure(int half_width, std::int64_t n, double eps,
                                        std::uint64_t samples, std::uint64_t seed);

struct PathwiseBoundReport {
  int half_width = 0;
  std::int64_t n = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t drawn = 0;       ///< configurations sampled
  std::uint64_t accepted = 0;    ///< configurations in A
  std::uint64_t unreachable = 0; ///< accepted but (n,0) cut off from the origin
  std::uint64_t violations = 0;  ///< D^K(n,0) > D^{K,d}(n,0) + 3K
  std::int64_t max_excess = 0;   ///< max of D^K - D^{K,d} over accepted configurations

  bool passed() const noexcept { return violations == 0 && unreachable == 0; }
};

/// Rejection-samples configurations until `target` lie in A (or
/// `max_draws` were drawn) and compares D^K(n,0) with the Cross-model
/// distance on the same horizontal edges. Draw s is
/// sample_strip(Standard K, eps, n, derive_seed(seed, s)).
PathwiseBoundReport check_pathwise_bound(int half_width, std::int64_t n, double eps,
                                         std::uint64_t target, std::uint64_t seed,
                                         std::uint64_t max_draws);

} // namespace crossperc
