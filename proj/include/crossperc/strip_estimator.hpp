#pragma once

// Expected Cross-model distance E[D(n,0)] on the strip, exact through the
// TASEP chain or estimated by Monte Carlo.

#include <cstdint>
#include <optional>
#include <vector>

#include "crossperc/rational.hpp"

namespace crossperc {

enum class ExpectationMethod { ExactChain, MonteCarlo, StationaryStart };

const char *to_string(ExpectationMethod method) noexcept;

struct StripExpectation {
  int half_width = 0;
  double eps = 0.0;
  std::int64_t n = 0;
  double value = 0.0;
  ExpectationMethod method = ExpectationMethod::ExactChain;
  std::optional<double> stderr_value;
  std::uint64_t replicas = 0;
};

/// E[D(n,0)] for n = 0..n_max, from
///   E[D(n,0)] = n + 2 eps sum_{t<n} P(Y_t has site 0 occupied, site 1 empty)
/// with Y_0 the step configuration. K <= 7, eps in (0,1).
std::vector<double> expected_distance_curve(int half_width, double eps, std::int64_t n_max);

/// Same in exact arithmetic. Probabilities at time t are kept as integers
/// over the common denominator b^(E t), where eps = a/b and E is the
/// largest number of simultaneously enabled events.
std::vector<Rational> expected_distance_curve(int half_width, const Rational &eps, std::int64_t n_max);

StripExpectation expected_distance_exact(int half_width, double eps, std::int64_t n);

/// n (1 + 2 eps nu), nu from stationary_exact.
StripExpectation stationary_start_expectation(int half_width, double eps, std::int64_t n);
/// Exact version with nu from stationary_exact_rational (K <= 3).
Rational stationary_start_expectation(int half_width, const Rational &eps, std::int64_t n);

/// Mean and standard error of D(n,0) over independent replicas; replica r
/// samples its columns from sample_strip(Cross K, eps, n, derive_seed(seed, r)).
StripExpectation monte_carlo_distance(int half_width, double eps, std::int64_t n,
                                      std::uint64_t replicas, std::uint64_t seed);

/// D(n,0) of a single replica of monte_carlo_distance.
std::int64_t replica_distance(int half_width, double eps, std::int64_t n, std::uint64_t seed,
                              std::uint64_t replica);

struct LowerBoundReport {
  int k = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t replicas = 0;
  std::uint64_t equality_violations = 0;     ///< D^d(k,0) != D^{k,d}(k,0)
  std::uint64_t domination_violations = 0;   ///< D^d(k,0) > D(k,0) with D finite
  std::uint64_t monotonicity_violations = 0; ///< D^d(m+1,0) < D^d(m,0) for some m < k
  std::uint64_t plane_finite = 0;            ///< replicas with D(k,0) finite

  bool passed() const noexcept {
    return equality_violations == 0 && domination_violations == 0 && monotonicity_violations == 0;
  }
};

/// Per replica, on sample_window(-2k-2, 3k+2, -2k-2, 2k+2, eps, seed, r):
///   D^d   plane distances with every vertical edge open and diagonals of length 2,
///   D^{k,d} the strip distance on rows [-k,k] with the same horizontal edges,
///   D     the ordinary plane distance.
/// The window holds every path of length <= 2k+1 from the origin.
LowerBoundReport lower_bound_check(int k, double eps, std::uint64_t seed, std::uint64_t replicas);

} // namespace crossperc
