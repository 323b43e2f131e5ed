#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossperc/rational.hpp"
#include "crossperc/tasep.hpp"

namespace crossperc {

enum class StationaryMethod { ExactSolve, Simulation, ClosedForm };

const char *to_string(StationaryMethod method) noexcept;

/// Either the full stationary vector (ExactSolve) or a point estimate of
/// nu(site 0 occupied, site 1 empty) (Simulation, ClosedForm).
struct StationaryDistribution {
  int half_width = 0;
  TasepRates rates;
  StationaryMethod method = StationaryMethod::ExactSolve;
  std::vector<double> probabilities;  ///< indexed by TasepState::encode(); ExactSolve only
  double nu_pair = 0.0;
  double stderr_nu = 0.0;
  std::uint64_t samples = 0;
  double residual = 0.0;  ///< ||pi P - pi||_1; ExactSolve only
  std::uint64_t seed = 0;
  std::string solver;     ///< "power", "cesaro" or "direct" for ExactSolve
};

struct SolveOptions {
  enum class Route { Auto, PowerOnly, DirectOnly };
  Route route = Route::Auto;
  double target_residual = 1e-12;
  std::uint64_t max_iterations = 200000;
  std::uint64_t stall_window = 100;
  double stall_improvement = 1e-14;
};

/// Accepted solves satisfy this residual bound.
inline constexpr double kResidualTolerance = 1e-10;

/// Stationary vector of the synchronous TASEP on 2K sites, K <= 7.
///
/// Power iteration with a Cesaro running average; when the residual stops
/// improving (relative gain below 1e-14 over 100 iterations) or the
/// iteration budget runs out, falls back to a sparse LU solve of
/// (P^T - I) pi = 0 with one row replaced by the normalisation.
///
/// Throws CapacityError for K > 7 and DegenerateError unless every rate lies
/// in (0,1) and the chain has a single recurrent class.
StationaryDistribution stationary_exact(int half_width, const TasepRates &rates,
                                        const SolveOptions &options = {});

/// ||pi P - pi||_1.
double stationary_residual(const TransitionTable<double> &table, const std::vector<double> &pi);

/// Sum of pi over the states with site 0 occupied and site 1 empty.
double nu_pair_of(int half_width, const std::vector<double> &pi);

inline constexpr int kMaxRationalHalfWidth = 3;

struct RationalStationary {
  int half_width = 0;
  Rational eps;
  std::vector<Rational> probabilities;
  Rational nu_pair;
};

/// Exact rational stationary vector by Gaussian elimination, K <= 3,
/// eps in (0,1).
RationalStationary stationary_exact_rational(int half_width, const Rational &eps);

/// Long-run frequency of {site 0 occupied, site 1 empty}.
///
/// Starts from the step configuration. Step t consumes 2K+1 draws from
/// derive_stream(seed, t), so the trajectory is exactly the coupled TASEP of
/// sample_strip(Cross, eps, ., seed) when all three rates equal eps.
/// Standard error by batch means over batches of `batch` steps; requires
/// samples >= 2 * batch.
StationaryDistribution nu_pair_simulated(int half_width, const TasepRates &rates,
                                         std::uint64_t burn_in, std::uint64_t samples,
                                         std::uint64_t seed, std::uint64_t batch = 1000);

} // namespace crossperc
