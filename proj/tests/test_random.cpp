#include <doctest.h>

#include <cmath>

#include "crossperc/errors.hpp"
#include "crossperc/random.hpp"
#include "crossperc/rational.hpp"
#include "crossperc/stats.hpp"

using namespace crossperc;

TEST_CASE("splitmix64 reference outputs") {
  // Published SplitMix64 sequence for seed 1234567.
  SplitMix64 rng(1234567);
  CHECK(rng() == 6457827717110365317ULL);
  CHECK(rng() == 3203168211198807973ULL);
  CHECK(rng() == 9817491932198370423ULL);
}

TEST_CASE("derived streams are distinct and reproducible") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  auto a = derive_stream(42, 7);
  auto b = derive_stream(42, 7);
  for (int i = 0; i < 10; ++i)
    CHECK(a() == b());
}

TEST_CASE("bernoulli thresholds") {
  const BernoulliThreshold never(0.0), always(1.0), half(0.5);
  CHECK_FALSE(never.fires(0));
  CHECK(always.fires(~0ULL));
  CHECK(half.fires((1ULL << 63) - 1));
  CHECK_FALSE(half.fires(1ULL << 63));
  CHECK_THROWS_AS(BernoulliThreshold(1.5), ParameterError);

  SplitMix64 rng(9);
  const BernoulliThreshold p(0.3);
  int hits = 0;
  const int trials = 200000;
  for (int i = 0; i < trials; ++i)
    hits += p.fires(rng());
  CHECK(std::abs(hits / double(trials) - 0.3) < 4 * std::sqrt(0.21 / trials));
}

TEST_CASE("rational parsing and exact conversion") {
  CHECK(parse_rational("0.2") == Rational(1, 5));
  CHECK(parse_rational("3/12") == Rational(1, 4));
  CHECK(parse_rational("1e-2") == Rational(1, 100));
  CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
  CHECK(to_rational(0.5) == Rational(1, 2));
  CHECK(static_cast<double>(to_rational(0.1)) == 0.1);
  CHECK(to_rational(0.1) != Rational(1, 10));
}

TEST_CASE("running statistics merge equals sequential") {
  RunningStats all, left, right;
  for (int i = 0; i < 100; ++i) {
    const double x = std::sin(i * 0.7) * 3 + i * 0.01;
    all.add(x);
    (i < 37 ? left : right).add(x);
  }
  left.merge(right);
  CHECK(left.count == all.count);
  CHECK(left.mean == doctest::Approx(all.mean).epsilon(1e-12));
  CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}
