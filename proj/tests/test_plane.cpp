#include <doctest.h>

#include <cmath>

#include "crossperc/errors.hpp"
#include "crossperc/plane.hpp"
#include "crossperc/strip.hpp"

using namespace crossperc;

namespace {

// Copy a window into a Standard strip rooted at (x_min, 0) so the generic
// Dijkstra oracle can be reused.
StripConfig as_strip(const PlaneWindow &w) {
  const int K = w.y_max();
  StripConfig config = StripConfig::uniform(StripGeometry(K, Model::Standard), w.x_max() - w.x_min(), true);
  for (int y = -K; y < K; ++y)
    config.first_vertical[static_cast<std::size_t>(y + K)] = w.vertical_open(w.x_min(), y);
  for (int x = w.x_min(); x < w.x_max(); ++x) {
    auto &col = config.columns[static_cast<std::size_t>(x - w.x_min())];
    for (int y = -K; y <= K; ++y) {
      col.horizontal[static_cast<std::size_t>(y + K)] = w.horizontal_open(x, y);
      if (y < K)
        (*col.vertical)[static_cast<std::size_t>(y + K)] = w.vertical_open(x + 1, y);
    }
  }
  return config;
}

double boundary_fraction(double eps) {
  int hits = 0;
  const int trials = 300;
  for (int r = 0; r < trials; ++r) {
    const auto w = sample_window(-15, 15, -15, 15, eps, 8, static_cast<std::uint64_t>(r));
    hits += label_clusters(w).reaches_border(w.index({0, 0}));
  }
  return hits / double(trials);
}

} // namespace

TEST_CASE("cluster labels on trivial windows") {
  const auto open = PlaneWindow::uniform(-3, 3, -2, 2, true);
  const auto labels = label_clusters(open);
  CHECK(labels.components == 1);
  CHECK(labels.reaches_border(open.index({0, 0})));

  const auto closed = PlaneWindow::uniform(-3, 3, -2, 2, false);
  CHECK(label_clusters(closed).components == static_cast<std::int32_t>(closed.vertex_count()));
}

TEST_CASE("distances on trivial windows") {
  const auto open = PlaneWindow::uniform(-2, 12, -3, 3, true);
  CHECK(plane_distance(open, {0, 0}, {10, 0}) == 10);
  auto w = open;
  w.set_horizontal(4, 1, false);
  w.set_horizontal(5, 1, false);
  w.set_vertical(5, 0, false);
  w.set_vertical(5, 1, false);
  CHECK_FALSE(plane_distance(w, {0, 0}, {5, 1}).has_value());
}

TEST_CASE("BFS agrees with Dijkstra and with labels") {
  SplitMix64 meta(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = sample_window(0, 25, -4, 4, 0.3, meta(), 0);
    const auto labels = label_clusters(w);
    const auto config = as_strip(w);
    for (int x = 0; x <= 25; x += 5)
      for (int y = -4; y <= 4; y += 2) {
        const auto bfs = plane_distance(w, {0, 0}, {x, y});
        const auto oracle = shortest_path_oracle(config, {0, 0}, {x, y});
        REQUIRE(bfs == oracle);
        REQUIRE(bfs.has_value() == labels.connected(w.index({0, 0}), w.index({x, y})));
        if (bfs)
          REQUIRE(*bfs >= std::abs(x) + std::abs(y));
      }
  }
}

TEST_CASE("opening an edge never increases a plane distance") {
  SplitMix64 meta(6);
  for (int trial = 0; trial < 200; ++trial) {
    auto w = sample_window(-5, 25, -5, 5, 0.35, meta(), 0);
    const auto before = plane_distance(w, {0, 0}, {20, 0});
    const int x = static_cast<int>(meta() % 30) - 5;
    const int y = static_cast<int>(meta() % 10) - 5;
    w.set_horizontal(x, y, true);
    const auto after = plane_distance(w, {0, 0}, {20, 0});
    if (before) {
      REQUIRE(after.has_value());
      CHECK(*after <= *before);
    }
  }
}

TEST_CASE("nested windows share edges") {
  const auto small = sample_window(-10, 10, -5, 5, 0.3, 4, 2);
  const auto large = sample_window(-20, 20, -10, 10, 0.3, 4, 2);
  for (int x = -10; x < 10; ++x)
    for (int y = -5; y < 5; ++y) {
      CHECK(small.horizontal_open(x, y) == large.horizontal_open(x, y));
      CHECK(small.vertical_open(x, y) == large.vertical_open(x, y));
    }
}

TEST_CASE("origin reaches the border less often at criticality") {
  CHECK(boundary_fraction(0.5) < boundary_fraction(0.05) - 0.2);
}

TEST_CASE("find_T") {
  const auto open = PlaneWindow::uniform(0, 40, -5, 5, true);
  const auto labels = label_clusters(open);
  for (int k = 1; k <= 4; ++k)
    CHECK(find_T(open, labels, 10, k) == PlaneVertex{10 * k, 0});
  CHECK_FALSE(find_T(open, labels, 10, 5).has_value());

  auto w = open;
  w.set_horizontal(9, 0, false);
  w.set_horizontal(10, 0, false);
  w.set_vertical(10, -1, false);
  w.set_vertical(10, 0, false);
  CHECK(find_T(w, label_clusters(w), 10, 1) == PlaneVertex{20, 0});
}

TEST_CASE("P(T_n(1) beyond n) scales like eps^4") {
  // Isolation of (n,0) needs its four edges closed.
  const auto frequency = [](double eps) {
    std::uint64_t far = 0;
    const std::uint64_t trials = 400000;
    for (std::uint64_t r = 0; r < trials; ++r) {
      const auto w = sample_window(0, 12, -6, 6, eps, 31, r);
      const auto t = find_T(w, label_clusters(w), 6, 1);
      far += !t || t->x > 6;
    }
    return static_cast<double>(far) / static_cast<double>(trials);
  };
  const double coarse = frequency(0.2);
  const double fine = frequency(0.1);
  REQUIRE(fine > 0.0);
  const double ratio = coarse / fine;
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 32.0);
}

TEST_CASE("mu estimator basics") {
  const auto zero = estimate_mu(0.0, 40, 20, 100, 1);
  CHECK(zero.mu_hat == 1.0);
  CHECK(zero.admissible_fraction == 1.0);
  const auto some = estimate_mu(0.1, 60, 30, 100, 1);
  CHECK(some.mu_hat >= 1.0);
  CHECK(some.admissible_fraction > 0.0);
  CHECK(some.admissible_fraction <= 1.0);
  CHECK_THROWS_AS(estimate_mu(1.0, 10, 5, 100, 1), EstimationError);
}
