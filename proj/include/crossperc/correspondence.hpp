#pragma once

// Cross-model distance profiles <-> TASEP configurations.
//
// Site j in [-K+1, K] carries a particle iff D(i,j) = D(i,j-1) - 1, i.e. the
// profile descends across the vertical edge below it. Under this map one
// cross_step equals one coupled_tasep_step, and the profile grows by
// 1 + 2 * [slot fired at a local minimum] on every row.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossperc/strip.hpp"
#include "crossperc/tasep.hpp"

namespace crossperc {

TasepState extract_particles(const DistanceProfile &profile);

/// Inverse of extract_particles given the bottom value d[-K].
DistanceProfile reconstruct_profile(const TasepState &state, std::int64_t bottom,
                                    std::int64_t column);

/// Slots (indexed row + K) that fired in a step y_now -> y_next, or nullopt
/// if no single synchronous step links the two.
std::optional<std::vector<std::uint8_t>> fired_events(const TasepState &y_now,
                                                      const TasepState &y_next);

/// D(i+1, row) - D(i, row) in {1, 3} read off two consecutive states.
/// Bulk rows: 3 iff the particle at `row` jumped to row+1. Row -K: 3 iff a
/// particle entered. Row K: 3 iff a particle exited.
/// ContractError if y_next is not one step from y_now.
int reconstruct_increment(const TasepState &y_now, const TasepState &y_next, int row);

struct CouplingMismatch {
  std::int64_t column = 0;
  int row = 0;
  std::string kind;  ///< "state" (site occupancy) or "distance"
  std::int64_t expected = 0;
  std::int64_t actual = 0;

  friend bool operator==(const CouplingMismatch &, const CouplingMismatch &) = default;
};

struct CouplingReport {
  int half_width = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t steps_checked = 0;
  std::uint64_t mismatches = 0;
  std::optional<CouplingMismatch> first_mismatch;

  bool passed() const noexcept { return mismatches == 0; }

  friend bool operator==(const CouplingReport &, const CouplingReport &) = default;
};

/// Counts add; the earlier report's first mismatch wins.
CouplingReport merge(CouplingReport into, const CouplingReport &other);

/// Runs cross_step from |j| and coupled_tasep_step from the step
/// configuration on the same edges. Each column checks the extracted state
/// site by site, and the profile rebuilt from increments row by row.
CouplingReport verify_coupling(const StripConfig &config);

/// verify_coupling on sample_strip(Cross K, eps, n_columns, seed).
CouplingReport verify_coupling(int half_width, double eps, std::int64_t n_columns, std::uint64_t seed);

} // namespace crossperc
