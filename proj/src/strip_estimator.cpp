#include "crossperc/strip_estimator.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "crossperc/errors.hpp"
#include "crossperc/parallel.hpp"
#include "crossperc/plane.hpp"
#include "crossperc/random.hpp"
#include "crossperc/stationary.hpp"
#include "crossperc/stats.hpp"
#include "crossperc/strip.hpp"
#include "crossperc/tasep.hpp"

namespace crossperc {

const char *to_string(ExpectationMethod method) noexcept {
  switch (method) {
  case ExpectationMethod::ExactChain:
    return "exact";
  case ExpectationMethod::MonteCarlo:
    return "monte-carlo";
  case ExpectationMethod::StationaryStart:
    return "stationary-start";
  }
  return "?";
}

namespace {

void require_open_interval(double eps) {
  require_probability(eps, "eps");
  if (!(eps > 0.0 && eps < 1.0))
    throw DegenerateError("exact chain evaluation needs eps strictly inside (0,1)");
}

} // namespace

std::vector<double> expected_distance_curve(int half_width, double eps, std::int64_t n_max) {
  require_open_interval(eps);
  require_parameter(n_max >= 0, "n must be non-negative");
  const auto table = build_transition_table(half_width, TasepRates::uniform(eps));
  const auto states = table.states();

  std::vector<double> p(states, 0.0), next(states);
  p[TasepState::step_configuration(half_width).encode()] = 1.0;
  std::vector<double> curve(static_cast<std::size_t>(n_max) + 1, 0.0);
  double pair_mass_sum = 0.0;
  for (std::int64_t t = 0; t < n_max; ++t) {
    for (std::uint32_t s = 0; s < states; ++s)
      if (is_pair_state(half_width, s))
        pair_mass_sum += p[s];
    curve[static_cast<std::size_t>(t + 1)] = static_cast<double>(t + 1) + 2.0 * eps * pair_mass_sum;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < states; ++s) {
      if (p[s] == 0.0)
        continue;
      for (auto k = table.row_start[s]; k < table.row_start[s + 1]; ++k)
        next[table.target[k]] += p[s] * table.probability[k];
    }
    std::swap(p, next);
  }
  return curve;
}

std::vector<Rational> expected_distance_curve(int half_width, const Rational &eps, std::int64_t n_max) {
  if (!(eps > 0 && eps < 1))
    throw DegenerateError("exact chain evaluation needs eps strictly inside (0,1)");
  require_parameter(n_max >= 0, "n must be non-negative");
  const auto table = build_transition_table(half_width, eps);
  const auto states = table.states();
  const Integer b = boost::multiprecision::denominator(eps);

  // Weight of each transition over the common denominator b^E.
  unsigned max_events = 0;
  for (std::uint32_t s = 0; s < states; ++s) {
    const auto outcomes = table.row_start[s + 1] - table.row_start[s];
    unsigned events = 0;
    while ((1U << events) < outcomes)
      ++events;
    max_events = std::max(max_events, events);
  }
  Integer scale = 1;
  for (unsigned e = 0; e < max_events; ++e)
    scale *= b;
  std::vector<Integer> weight(table.probability.size());
  for (std::size_t k = 0; k < weight.size(); ++k) {
    const Rational w = table.probability[k] * scale;
    require_contract(boost::multiprecision::denominator(w) == 1, "transition weight is not integral");
    weight[k] = boost::multiprecision::numerator(w);
  }

  std::vector<Integer> mass(states, 0), next(states);
  mass[TasepState::step_configuration(half_width).encode()] = 1;
  Integer denominator = 1;  // scale^t
  Rational pair_sum = 0;
  std::vector<Rational> curve(static_cast<std::size_t>(n_max) + 1, Rational(0));
  for (std::int64_t t = 0; t < n_max; ++t) {
    Integer pair_mass = 0;
    for (std::uint32_t s = 0; s < states; ++s)
      if (is_pair_state(half_width, s))
        pair_mass += mass[s];
    pair_sum += Rational(pair_mass, denominator);
    curve[static_cast<std::size_t>(t + 1)] = Rational(t + 1) + 2 * eps * pair_sum;

    for (auto &m : next)
      m = 0;
    for (std::size_t s = 0; s < states; ++s) {
      if (mass[s] == 0)
        continue;
      for (auto k = table.row_start[s]; k < table.row_start[s + 1]; ++k)
        next[table.target[k]] += mass[s] * weight[k];
    }
    std::swap(mass, next);
    denominator *= scale;
  }
  return curve;
}

StripExpectation expected_distance_exact(int half_width, double eps, std::int64_t n) {
  const auto curve = expected_distance_curve(half_width, eps, n);
  StripExpectation out;
  out.half_width = half_width;
  out.eps = eps;
  out.n = n;
  out.value = curve.back();
  out.method = ExpectationMethod::ExactChain;
  return out;
}

StripExpectation stationary_start_expectation(int half_width, double eps, std::int64_t n) {
  require_parameter(n >= 0, "n must be non-negative");
  const auto pi = stationary_exact(half_width, TasepRates::uniform(eps));
  StripExpectation out;
  out.half_width = half_width;
  out.eps = eps;
  out.n = n;
  out.value = static_cast<double>(n) * (1.0 + 2.0 * eps * pi.nu_pair);
  out.method = ExpectationMethod::StationaryStart;
  return out;
}

Rational stationary_start_expectation(int half_width, const Rational &eps, std::int64_t n) {
  require_parameter(n >= 0, "n must be non-negative");
  const auto pi = stationary_exact_rational(half_width, eps);
  return Rational(n) * (1 + 2 * eps * pi.nu_pair);
}

std::int64_t replica_distance(int half_width, double eps, std::int64_t n, std::uint64_t seed,
                              std::uint64_t replica) {
  const BernoulliThreshold closed(eps);
  const std::uint64_t replica_seed = derive_seed(seed, replica);
  const auto rows = static_cast<std::size_t>(2 * half_width + 1);
  std::vector<std::int64_t> d = initial_profile(half_width).d, scratch(rows);
  std::vector<std::uint8_t> open(rows);
  for (std::int64_t i = 0; i < n; ++i) {
    auto rng = derive_stream(replica_seed, static_cast<std::uint64_t>(i));
    for (auto &flag : open)
      flag = closed.fires(rng()) ? 0 : 1;
    detail::cross_step_kernel(d, open, scratch);
    std::swap(d, scratch);
  }
  return d[static_cast<std::size_t>(half_width)];
}

StripExpectation monte_carlo_distance(int half_width, double eps, std::int64_t n,
                                      std::uint64_t replicas, std::uint64_t seed) {
  require_parameter(half_width >= 1, "strip half-width K must be >= 1");
  require_probability(eps, "eps");
  require_parameter(n >= 0, "n must be non-negative");
  require_parameter(replicas >= 2, "Monte Carlo needs at least two replicas");
  const auto stats = reduce_replicas<RunningStats>(
      replicas,
      [&](std::uint64_t r, RunningStats &acc) {
        acc.add(static_cast<double>(replica_distance(half_width, eps, n, seed, r)));
      },
      [](RunningStats &into, const RunningStats &from) { into.merge(from); });
  StripExpectation out;
  out.half_width = half_width;
  out.eps = eps;
  out.n = n;
  out.value = stats.mean;
  out.stderr_value = stats.standard_error();
  out.method = ExpectationMethod::MonteCarlo;
  out.replicas = replicas;
  return out;
}

namespace {

// Dijkstra on the window with horizontal edges as sampled, every vertical
// edge open (length 1) and both diagonals open (length 2).
std::vector<std::int64_t> diagonal_plane_field(const PlaneWindow &window, PlaneVertex source) {
  constexpr auto kUnset = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(window.vertex_count(), kUnset);
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[window.index(source)] = 0;
  queue.emplace(0, window.index(source));
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (du != dist[u])
      continue;
    const auto [x, y] = window.vertex(u);
    const auto relax = [&](int x2, int y2, std::int64_t w) {
      if (!window.contains({x2, y2}))
        return;
      const auto v = window.index({x2, y2});
      if (du + w < dist[v]) {
        dist[v] = du + w;
        queue.emplace(dist[v], v);
      }
    };
    if (x < window.x_max() && window.horizontal_open(x, y))
      relax(x + 1, y, 1);
    if (x > window.x_min() && window.horizontal_open(x - 1, y))
      relax(x - 1, y, 1);
    relax(x, y + 1, 1);
    relax(x, y - 1, 1);
    for (const int dx : {-1, 1})
      for (const int dy : {-1, 1})
        relax(x + dx, y + dy, 2);
  }
  return dist;
}

} // namespace

LowerBoundReport lower_bound_check(int k, double eps, std::uint64_t seed, std::uint64_t replicas) {
  require_parameter(k >= 1, "lower-bound check needs k >= 1");
  require_probability(eps, "eps");
  require_parameter(replicas >= 1, "lower-bound check needs at least one replica");
  const int reach = 2 * k + 2;

  struct Acc {
    std::uint64_t equality = 0, domination = 0, monotonicity = 0, finite = 0;
  };
  const auto body = [&](std::uint64_t r, Acc &acc) {
    const auto window = sample_window(-reach, k + reach, -reach, reach, eps, seed, r);
    const auto field = diagonal_plane_field(window, {0, 0});
    const auto dd = [&](int m) { return field[window.index({m, 0})]; };

    StripConfig strip = StripConfig::uniform(StripGeometry(k, Model::Cross), k, true);
    for (int i = 0; i < k; ++i)
      for (int row = -k; row <= k; ++row)
        strip.columns[static_cast<std::size_t>(i)].horizontal[static_cast<std::size_t>(row + k)] =
            window.horizontal_open(i, row) ? 1 : 0;
    if (dd(k) != cross_profile(strip, k).at(0))
      ++acc.equality;

    for (int m = 0; m < k; ++m)
      if (dd(m + 1) < dd(m)) {
        ++acc.monotonicity;
        break;
      }

    if (const auto plain = plane_distance(window, {0, 0}, {k, 0})) {
      ++acc.finite;
      if (dd(k) > *plain)
        ++acc.domination;
    }
  };
  const auto merge = [](Acc &into, const Acc &from) {
    into.equality += from.equality;
    into.domination += from.domination;
    into.monotonicity += from.monotonicity;
    into.finite += from.finite;
  };
  const auto total = reduce_replicas<Acc>(replicas, body, merge);

  LowerBoundReport out;
  out.k = k;
  out.eps = eps;
  out.seed = seed;
  out.replicas = replicas;
  out.equality_violations = total.equality;
  out.domination_violations = total.domination;
  out.monotonicity_violations = total.monotonicity;
  out.plane_finite = total.finite;
  return out;
}

} // namespace crossperc
