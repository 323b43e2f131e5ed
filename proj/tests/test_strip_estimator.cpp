#include <doctest.h>

#include <cmath>

#include "crossperc/errors.hpp"
#include "crossperc/parallel.hpp"
#include "crossperc/stationary.hpp"
#include "crossperc/stats.hpp"
#include "crossperc/strip.hpp"
#include "crossperc/strip_estimator.hpp"

using namespace crossperc;

namespace {

// E[D(n,0)] by summing over every horizontal configuration.
Rational enumerated_expectation(int K, const Rational &eps, int n) {
  const int rows = 2 * K + 1;
  const int bits = rows * n;
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    auto config = StripConfig::uniform(StripGeometry(K, Model::Cross), n, true);
    Rational weight = 1;
    for (int b = 0; b < bits; ++b) {
      const bool closed = (mask >> b) & 1U;
      config.columns[static_cast<std::size_t>(b / rows)].horizontal[static_cast<std::size_t>(b % rows)] = !closed;
      weight *= closed ? eps : 1 - eps;
    }
    total += weight * cross_profile(config, n).at(0);
  }
  return total;
}

} // namespace

TEST_CASE("exact curve against brute-force enumeration") {
  const Rational eps(1, 5);
  for (int K = 1; K <= 2; ++K) {
    const int n_max = K == 1 ? 4 : 3;
    const auto curve = expected_distance_curve(K, eps, n_max);
    for (int n = 0; n <= n_max; ++n) {
      CAPTURE(K);
      CAPTURE(n);
      CHECK(curve[static_cast<std::size_t>(n)] == enumerated_expectation(K, eps, n));
    }
  }
}

TEST_CASE("frozen exact values") {
  const auto curve = expected_distance_curve(3, Rational(1, 5), 3);
  CHECK(curve[0] == 0);
  CHECK(curve[1] == Rational(7, 5));
  CHECK(curve[2] == Rational(68, 25));
  CHECK(curve[3] == parse_rational("3.9792"));
  const auto floating = expected_distance_curve(3, 0.2, 3);
  CHECK(floating[3] == doctest::Approx(3.9792).epsilon(1e-13));
}

TEST_CASE("exact expectation basics") {
  CHECK(expected_distance_exact(3, 0.2, 0).value == 0.0);
  CHECK(expected_distance_exact(2, 1e-9, 50).value == doctest::Approx(50.0).epsilon(1e-6));
  CHECK_THROWS_AS(expected_distance_exact(2, 0.0, 5), DegenerateError);
  CHECK_THROWS_AS(expected_distance_exact(8, 0.2, 5), CapacityError);
}

TEST_CASE("stationary start is linear in n") {
  const auto a = stationary_start_expectation(3, Rational(1, 5), 37);
  const auto b = stationary_start_expectation(3, Rational(1, 5), 74);
  CHECK(b == 2 * a);
  const auto x = stationary_start_expectation(4, 0.2, 50).value;
  const auto y = stationary_start_expectation(4, 0.2, 100).value;
  CHECK(y == doctest::Approx(2 * x).epsilon(1e-14));
}

TEST_CASE("sandwich and monotone ratio in floating point") {
  for (int K = 1; K <= 7; ++K)
    for (const double eps : {0.1, 0.2, 0.4}) {
      CAPTURE(K);
      CAPTURE(eps);
      const double nu = stationary_exact(K, TasepRates::uniform(eps)).nu_pair;
      const auto curve = expected_distance_curve(K, eps, 500);
      for (int n = 1; n <= 500; ++n) {
        const double gap = curve[static_cast<std::size_t>(n)] - n * (1.0 + 2.0 * eps * nu);
        REQUIRE(gap >= -1e-9);
        REQUIRE(gap <= 2.0 * K + 1e-9);
        if (n > 1)
          REQUIRE(curve[static_cast<std::size_t>(n)] / n <= curve[static_cast<std::size_t>(n - 1)] / (n - 1) + 1e-12);
      }
    }
}

TEST_CASE("Monte Carlo matches the exact chain") {
  SUBCASE("K = 2, eps = 0.3, n = 10") {
    const auto mc = monte_carlo_distance(2, 0.3, 10, 1'000'000, 5);
    const double exact = expected_distance_exact(2, 0.3, 10).value;
    CHECK(std::abs(mc.value - exact) <= 4 * *mc.stderr_value);
  }
  SUBCASE("K = 3, eps = 0.2, n = 200") {
    const auto mc = monte_carlo_distance(3, 0.2, 200, 20000, 6);
    const double exact = expected_distance_exact(3, 0.2, 200).value;
    CHECK(std::abs(mc.value - exact) <= 4 * *mc.stderr_value);
  }
  SUBCASE("degenerate") {
    const auto zero = monte_carlo_distance(3, 0.0, 33, 100, 1);
    CHECK(zero.value == 33.0);
    CHECK(*zero.stderr_value == 0.0);
    CHECK(monte_carlo_distance(3, 1.0, 33, 100, 1).value == 67.0);
  }
}

TEST_CASE("replica distance matches the sampled strip") {
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto config = sample_strip(StripGeometry(3, Model::Cross), 0.25, 40, derive_seed(99, r));
    CHECK(replica_distance(3, 0.25, 40, 99, r) == cross_profile(config, 40).at(0));
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto body = [](std::uint64_t r, RunningStats &acc) {
    acc.add(static_cast<double>(replica_distance(2, 0.3, 25, 4, r)));
  };
  const auto merge = [](RunningStats &into, const RunningStats &from) { into.merge(from); };
  const auto one = reduce_replicas<RunningStats>(1000, body, merge, 1);
  const auto four = reduce_replicas<RunningStats>(1000, body, merge, 4);
  const auto seven = reduce_replicas<RunningStats>(1000, body, merge, 7);
  CHECK(one.mean == four.mean);
  CHECK(one.m2 == four.m2);
  CHECK(one.mean == seven.mean);
  CHECK(one.m2 == seven.m2);
}

TEST_CASE("lower-bound check") {
  const auto open = lower_bound_check(5, 0.0, 1, 3);
  CHECK(open.passed());
  CHECK(open.plane_finite == 3);
  const auto report = lower_bound_check(12, 0.3, 2, 100);
  CHECK(report.passed());
  CHECK(report.plane_finite > 50);
}
