#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "crossperc/errors.hpp"
#include "crossperc/random.hpp"
#include "crossperc/strip.hpp"

using namespace crossperc;

namespace {

StripConfig cross_strip(int K, double eps, std::int64_t n, std::uint64_t seed) {
  return sample_strip(StripGeometry(K, Model::Cross), eps, n, seed);
}

// Sweep the DP and compare every column and row against Dijkstra.
bool sweep_matches_oracle(const StripConfig &config) {
  const int K = config.geometry.half_width();
  const auto field = shortest_path_field(config, {0, 0});
  DistanceProfile profile = initial_profile(K);
  for (std::int64_t i = 0;; ++i) {
    for (int j = -K; j <= K; ++j) {
      const auto &oracle = field[static_cast<std::size_t>(i * (2 * K + 1) + j + K)];
      if (!oracle || *oracle != profile.at(j))
        return false;
    }
    if (!profile_invariants_hold(profile))
      return false;
    if (i == config.length())
      return true;
    profile = cross_step(profile, config.columns[static_cast<std::size_t>(i)]);
  }
}

} // namespace

TEST_CASE("cross_step on all-open columns adds one") {
  for (int K = 1; K <= 5; ++K) {
    const StripGeometry geom(K, Model::Cross);
    DistanceProfile p = initial_profile(K);
    for (int i = 0; i < 7; ++i) {
      p = cross_step(p, EdgeColumn::uniform(geom, true));
      for (int j = -K; j <= K; ++j)
        CHECK(p.at(j) == i + 1 + std::abs(j));
    }
  }
}

TEST_CASE("cross_step with every horizontal closed") {
  for (int K = 1; K <= 4; ++K) {
    const auto config = StripConfig::uniform(StripGeometry(K, Model::Cross), 12, false);
    for (std::int64_t n = 0; n <= 12; ++n)
      CHECK(cross_profile(config, n).at(0) == 2 * n + n % 2);
  }
}

TEST_CASE("profile invariants and validation") {
  DistanceProfile p = initial_profile(3);
  CHECK(profile_invariants_hold(p));
  CHECK_NOTHROW(validate_profile(p));
  p.d[2] += 2;
  CHECK_FALSE(profile_invariants_hold(p));
  CHECK_THROWS_AS(validate_profile(p), ContractError);
}

TEST_CASE("cross DP equals the oracle on a fixed instance") {
  CHECK(sweep_matches_oracle(cross_strip(4, 0.3, 50, 2024)));
}

TEST_CASE("cross DP equals the oracle on 1000 random instances") {
  SplitMix64 meta(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const int K = 1 + static_cast<int>(meta() % 8);
    const auto n = static_cast<std::int64_t>(1 + meta() % 60);
    const double eps = to_unit_interval(meta());
    const auto config = cross_strip(K, eps, n, meta());
    REQUIRE_MESSAGE(sweep_matches_oracle(config), "trial " << trial);
  }
}

TEST_CASE("oracle on open strips") {
  const auto cross = StripConfig::uniform(StripGeometry(3, Model::Cross), 9, true);
  for (int j = -3; j <= 3; ++j)
    CHECK(shortest_path_oracle(cross, {0, 0}, {9, j}) == 9 + std::abs(j));
  const auto standard = StripConfig::uniform(StripGeometry(3, Model::Standard), 9, true);
  CHECK(standard_distance(standard, 9) == 9);
  CHECK(standard_distance(standard, 0) == 0);
}

TEST_CASE("isolated target in the standard model is unreachable") {
  auto config = StripConfig::uniform(StripGeometry(2, Model::Standard), 6, true);
  // Close all four edges around (3, 0).
  config.columns[2].horizontal[2] = 0;
  config.columns[3].horizontal[2] = 0;
  (*config.columns[2].vertical)[1] = 0;
  (*config.columns[2].vertical)[2] = 0;
  CHECK_FALSE(shortest_path_oracle(config, {0, 0}, {3, 0}).has_value());
  CHECK_FALSE(standard_distance(config, 3).has_value());
  CHECK(standard_distance(config, 6).has_value());
}

TEST_CASE("degenerate epsilons") {
  CHECK(cross_profile(cross_strip(3, 0.0, 40, 5), 40).at(0) == 40);
  CHECK(cross_profile(cross_strip(3, 1.0, 41, 5), 41).at(0) == 83);
}

TEST_CASE("opening an edge never increases a distance") {
  SplitMix64 meta(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int K = 1 + static_cast<int>(meta() % 5);
    auto config = cross_strip(K, 0.4, 30, meta());
    const auto before = cross_profile(config, 30);
    std::vector<std::pair<std::size_t, std::size_t>> closed;
    for (std::size_t c = 0; c < config.columns.size(); ++c)
      for (std::size_t r = 0; r < config.columns[c].horizontal.size(); ++r)
        if (!config.columns[c].horizontal[r])
          closed.emplace_back(c, r);
    if (closed.empty())
      continue;
    const auto [c, r] = closed[meta() % closed.size()];
    config.columns[c].horizontal[r] = 1;
    const auto after = cross_profile(config, 30);
    for (int j = -K; j <= K; ++j)
      CHECK(after.at(j) <= before.at(j));
  }

  for (int trial = 0; trial < 200; ++trial) {
    auto config = sample_strip(StripGeometry(2, Model::Standard), 0.3, 20, meta());
    const auto before = standard_distance(config, 20);
    for (auto &col : config.columns)
      for (auto &bit : *col.vertical)
        bit = 1;
    const auto after = standard_distance(config, 20);
    if (before) {
      REQUIRE(after.has_value());
      CHECK(*after <= *before);
    }
  }
}

TEST_CASE("event A") {
  const StripGeometry geom(2, Model::Standard);
  auto config = StripConfig::uniform(geom, 5, true);
  const auto box = event_box(geom, 5);
  CHECK(check_event_A(config, box));
  config.columns[1].horizontal[2] = 0;  // bottom of square (1,0)
  CHECK(check_event_A(config, box));
  config.columns[1].horizontal[3] = 0;  // its top
  CHECK_FALSE(check_event_A(config, box));
}

TEST_CASE("pathwise standard-vs-cross bound on event A") {
  SplitMix64 meta(11);
  int accepted = 0;
  for (int trial = 0; trial < 4000 && accepted < 300; ++trial) {
    const int K = 1 + static_cast<int>(meta() % 3);
    const std::int64_t n = 20;
    const auto config = sample_strip(StripGeometry(K, Model::Standard), 0.05, n, meta());
    if (!check_event_A(config, event_box(config.geometry, n)))
      continue;
    ++accepted;
    const auto standard = standard_distance(config, n);
    REQUIRE(standard.has_value());
    CHECK(*standard <= cross_profile(config, n).at(0) + 3 * K);
  }
  CHECK(accepted >= 300);
}

TEST_CASE("edge file round trip") {
  for (const auto model : {Model::Cross, Model::Standard}) {
    const auto config = sample_strip(StripGeometry(3, model), 0.3, 25, 8);
    std::stringstream ss;
    write_edges(ss, config);
    const auto back = read_edges(ss);
    CHECK(back == config);
  }
}

TEST_CASE("edge file rejects malformed input") {
  std::istringstream bad_bits("K 1 model cross\n0 H:1x1 V:\n");
  CHECK_THROWS_AS(read_edges(bad_bits), ParameterError);
  std::istringstream bad_length("K 1 model cross\n0 H:11 V:\n");
  CHECK_THROWS_AS(read_edges(bad_length), ParameterError);
  std::istringstream no_header("0 H:111 V:\n");
  CHECK_THROWS_AS(read_edges(no_header), ParameterError);
}

TEST_CASE("geometry rejects non-positive half-width") {
  CHECK_THROWS_AS(StripGeometry(0, Model::Cross), ParameterError);
  CHECK_THROWS_AS(sample_strip(StripGeometry(1, Model::Cross), 1.5, 3, 1), ParameterError);
}
