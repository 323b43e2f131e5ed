#include "crossperc/stationary.hpp"

#include <cmath>
#include <deque>
#include <string>
#include <utility>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "crossperc/errors.hpp"

namespace crossperc {

const char *to_string(StationaryMethod method) noexcept {
  switch (method) {
  case StationaryMethod::ExactSolve:
    return "exact";
  case StationaryMethod::Simulation:
    return "simulation";
  case StationaryMethod::ClosedForm:
    return "closed-form";
  }
  return "?";
}

namespace {

std::vector<double> left_multiply(const TransitionTable<double> &table, const std::vector<double> &pi) {
  std::vector<double> next(pi.size(), 0.0);
  for (std::size_t s = 0; s < table.states(); ++s) {
    const double mass = pi[s];
    if (mass == 0.0)
      continue;
    for (auto k = table.row_start[s]; k < table.row_start[s + 1]; ++k)
      next[table.target[k]] += mass * table.probability[k];
  }
  return next;
}

double l1_distance(const std::vector<double> &a, const std::vector<double> &b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += std::abs(a[i] - b[i]);
  return sum;
}

void normalise(std::vector<double> &pi) {
  double total = 0.0;
  for (const double p : pi)
    total += p;
  for (double &p : pi)
    p /= total;
}

// A state reachable from every state exists iff there is exactly one
// recurrent class. The empty configuration is the candidate.
template <class Scalar> bool single_recurrent_class(const TransitionTable<Scalar> &table) {
  const auto n = table.states();
  std::vector<std::vector<std::uint32_t>> reverse(n);
  for (std::uint32_t s = 0; s < n; ++s)
    for (auto k = table.row_start[s]; k < table.row_start[s + 1]; ++k)
      reverse[table.target[k]].push_back(s);
  std::vector<std::uint8_t> seen(n, 0);
  std::deque<std::uint32_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (const auto r : reverse[s]) {
      if (!seen[r]) {
        seen[r] = 1;
        ++reached;
        queue.push_back(r);
      }
    }
  }
  return reached == n;
}

struct PowerResult {
  std::vector<double> pi;
  double residual;
  std::string route;
  bool converged;
};

PowerResult power_iteration(const TransitionTable<double> &table, const SolveOptions &options) {
  const auto n = table.states();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> cesaro_sum(n, 0.0);
  double residual = 0.0;
  double window_start = -1.0;
  for (std::uint64_t it = 1; it <= options.max_iterations; ++it) {
    auto next = left_multiply(table, pi);
    residual = l1_distance(next, pi);
    for (std::size_t s = 0; s < n; ++s)
      cesaro_sum[s] += next[s];
    pi = std::move(next);
    normalise(pi);
    if (residual <= options.target_residual)
      return {std::move(pi), residual, "power", true};
    if (it % options.stall_window == 0) {
      if (window_start > 0.0 && window_start - residual < options.stall_improvement * window_start)
        break;
      window_start = residual;
    }
  }
  // Near-periodic spectra: the running average may have settled even if
  // the iterate has not.
  normalise(cesaro_sum);
  const double cesaro_residual = l1_distance(left_multiply(table, cesaro_sum), cesaro_sum);
  if (cesaro_residual <= options.target_residual)
    return {std::move(cesaro_sum), cesaro_residual, "cesaro", true};
  return {std::move(pi), residual, "power", false};
}

std::vector<double> direct_solve(const TransitionTable<double> &table) {
  const auto n = static_cast<Eigen::Index>(table.states());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(table.target.size() + 2 * static_cast<std::size_t>(n));
  // Row t of (P^T - I) collects inflow into t; the last row becomes sum(pi) = 1.
  for (Eigen::Index s = 0; s < n; ++s) {
    for (auto k = table.row_start[static_cast<std::size_t>(s)];
         k < table.row_start[static_cast<std::size_t>(s) + 1]; ++k) {
      const auto t = static_cast<Eigen::Index>(table.target[k]);
      if (t != n - 1)
        entries.emplace_back(t, s, table.probability[k]);
    }
  }
  for (Eigen::Index s = 0; s + 1 < n; ++s)
    entries.emplace_back(s, s, -1.0);
  for (Eigen::Index s = 0; s < n; ++s)
    entries.emplace_back(n - 1, s, 1.0);

  Eigen::SparseMatrix<double> system(n, n);
  system.setFromTriplets(entries.begin(), entries.end());
  system.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(system);
  if (lu.info() != Eigen::Success)
    throw DegenerateError("sparse LU factorisation of the stationary system failed");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  const Eigen::VectorXd solution = lu.solve(rhs);
  std::vector<double> pi(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s)
    pi[static_cast<std::size_t>(s)] = std::max(solution(s), 0.0);
  normalise(pi);
  return pi;
}

} // namespace

double stationary_residual(const TransitionTable<double> &table, const std::vector<double> &pi) {
  require_contract(pi.size() == table.states(), "distribution size does not match the chain");
  return l1_distance(left_multiply(table, pi), pi);
}

double nu_pair_of(int half_width, const std::vector<double> &pi) {
  double nu = 0.0;
  for (std::uint32_t s = 0; s < pi.size(); ++s)
    if (is_pair_state(half_width, s))
      nu += pi[s];
  return nu;
}

StationaryDistribution stationary_exact(int half_width, const TasepRates &rates,
                                        const SolveOptions &options) {
  rates.validate();
  if (!rates.interior())
    throw DegenerateError("exact stationary solve needs every rate strictly inside (0,1)");
  const auto table = build_transition_table(half_width, rates);
  if (!single_recurrent_class(table))
    throw DegenerateError("TASEP chain has more than one recurrent class");

  StationaryDistribution out;
  out.half_width = half_width;
  out.rates = rates;
  out.method = StationaryMethod::ExactSolve;

  bool done = false;
  if (options.route != SolveOptions::Route::DirectOnly) {
    auto power = power_iteration(table, options);
    if (power.converged || options.route == SolveOptions::Route::PowerOnly) {
      out.probabilities = std::move(power.pi);
      out.solver = power.route;
      done = true;
    }
  }
  if (!done) {
    out.probabilities = direct_solve(table);
    out.solver = "direct";
  }
  out.residual = stationary_residual(table, out.probabilities);
  if (!(out.residual <= kResidualTolerance))
    throw DegenerateError("stationary solve did not reach the residual tolerance (residual " +
                          std::to_string(out.residual) + ")");
  out.nu_pair = nu_pair_of(half_width, out.probabilities);
  return out;
}

RationalStationary stationary_exact_rational(int half_width, const Rational &eps) {
  require_parameter(half_width >= 1, "TASEP half-width K must be >= 1");
  if (half_width > kMaxRationalHalfWidth)
    throw CapacityError("rational stationary solve needs K <= " + std::to_string(kMaxRationalHalfWidth));
  if (!(eps > 0 && eps < 1))
    throw DegenerateError("exact stationary solve needs eps strictly inside (0,1)");
  const auto table = build_transition_table(half_width, eps);
  if (!single_recurrent_class(table))
    throw DegenerateError("TASEP chain has more than one recurrent class");

  const auto n = table.states();
  // Augmented system [(P^T - I) with last row = 1 | e_last].
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t s = 0; s < n; ++s)
    for (auto k = table.row_start[s]; k < table.row_start[s + 1]; ++k)
      a[table.target[k]][s] += table.probability[k];
  for (std::size_t s = 0; s < n; ++s)
    a[s][s] -= 1;
  for (auto &entry : a[n - 1])
    entry = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0)
      ++pivot;
    if (pivot == n)
      throw DegenerateError("singular stationary system");
    std::swap(a[pivot], a[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j <= n; ++j)
      a[col][j] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0)
        continue;
      const Rational factor = a[r][col];
      for (std::size_t j = col; j <= n; ++j)
        if (a[col][j] != 0)
          a[r][j] -= factor * a[col][j];
    }
  }

  RationalStationary out;
  out.half_width = half_width;
  out.eps = eps;
  out.probabilities.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    out.probabilities[s] = a[s][n];
    if (is_pair_state(half_width, static_cast<std::uint32_t>(s)))
      out.nu_pair += a[s][n];
  }
  return out;
}

StationaryDistribution nu_pair_simulated(int half_width, const TasepRates &rates,
                                         std::uint64_t burn_in, std::uint64_t samples,
                                         std::uint64_t seed, std::uint64_t batch) {
  require_parameter(half_width >= 1, "TASEP half-width K must be >= 1");
  rates.validate();
  require_parameter(burn_in > 0 && samples > 0, "burn-in and sample counts must be positive");
  require_parameter(batch > 0 && samples >= 2 * batch,
                    "need at least two batches: samples >= 2 * batch");

  const auto n = static_cast<std::size_t>(2 * half_width);
  const BernoulliThreshold entry(rates.beta), jump(rates.alpha), exit(rates.gamma);
  std::vector<std::uint8_t> state(n, 0), next(n);
  for (std::size_t p = 0; p < static_cast<std::size_t>(half_width); ++p)
    state[p] = 1;
  const std::size_t zero = static_cast<std::size_t>(half_width - 1);

  std::uint64_t hits = 0, batch_hits = 0;
  double batch_sum = 0.0, batch_sq = 0.0;
  std::uint64_t batches = 0;
  const std::uint64_t total = burn_in + samples;
  for (std::uint64_t t = 0; t < total; ++t) {
    auto rng = derive_stream(seed, t);
    next = state;
    if (entry.fires(rng()) && !state[0])
      next[0] = 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      if (jump.fires(rng()) && state[p] && !state[p + 1]) {
        next[p] = 0;
        next[p + 1] = 1;
      }
    }
    if (exit.fires(rng()) && state[n - 1])
      next[n - 1] = 0;
    std::swap(state, next);

    if (t < burn_in)
      continue;
    const bool pair = state[zero] && !state[zero + 1];
    hits += pair;
    batch_hits += pair;
    if ((t - burn_in + 1) % batch == 0) {
      const double mean = static_cast<double>(batch_hits) / static_cast<double>(batch);
      batch_sum += mean;
      batch_sq += mean * mean;
      ++batches;
      batch_hits = 0;
    }
  }

  StationaryDistribution out;
  out.half_width = half_width;
  out.rates = rates;
  out.method = StationaryMethod::Simulation;
  out.samples = samples;
  out.seed = seed;
  out.nu_pair = static_cast<double>(hits) / static_cast<double>(samples);
  const double b = static_cast<double>(batches);
  const double mean = batch_sum / b;
  const double var = std::max(0.0, (batch_sq - b * mean * mean) / (b - 1.0));
  out.stderr_nu = std::sqrt(var / b);
  return out;
}

} // namespace crossperc
