#include "crossperc/plane.hpp"

#include <numeric>
#include <string>

#include "crossperc/errors.hpp"
#include "crossperc/parallel.hpp"
#include "crossperc/random.hpp"
#include "crossperc/stats.hpp"

namespace crossperc {

PlaneWindow::PlaneWindow(int x_min, int x_max, int y_min, int y_max, double eps)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), eps_(eps) {
  require_parameter(x_min <= x_max && y_min <= y_max, "empty plane window");
  require_probability(eps, "eps");
  horizontal_.assign(vertex_count(), 0);
  vertical_.assign(vertex_count(), 0);
}

PlaneWindow PlaneWindow::uniform(int x_min, int x_max, int y_min, int y_max, bool open) {
  PlaneWindow window(x_min, x_max, y_min, y_max, open ? 0.0 : 1.0);
  for (int y = y_min; y <= y_max; ++y) {
    for (int x = x_min; x <= x_max; ++x) {
      if (x < x_max)
        window.set_horizontal(x, y, open);
      if (y < y_max)
        window.set_vertical(x, y, open);
    }
  }
  return window;
}

PlaneVertex PlaneWindow::vertex(std::size_t index) const noexcept {
  const auto w = static_cast<std::size_t>(width());
  return {x_min_ + static_cast<int>(index % w), y_min_ + static_cast<int>(index / w)};
}

PlaneWindow sample_window(int x_min, int x_max, int y_min, int y_max, double eps, std::uint64_t seed,
                          std::uint64_t replica) {
  PlaneWindow window(x_min, x_max, y_min, y_max, eps);
  const BernoulliThreshold closed(eps);
  const std::uint64_t key = derive_seed(seed, replica);
  for (int y = y_min; y <= y_max; ++y) {
    for (int x = x_min; x <= x_max; ++x) {
      const std::uint64_t site = key ^ ((static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                                        static_cast<std::uint32_t>(y));
      const std::uint64_t base = mix64(site);
      if (x < x_max)
        window.set_horizontal(x, y, !closed.fires(mix64(base)));
      if (y < y_max)
        window.set_vertical(x, y, !closed.fires(mix64(base + 1)));
    }
  }
  return window;
}

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> size;

  explicit DisjointSets(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0U);
  }

  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (size[a] < size[b])
      std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

} // namespace

ClusterLabels label_clusters(const PlaneWindow &window) {
  const auto n = window.vertex_count();
  const auto w = static_cast<std::uint32_t>(window.width());
  DisjointSets sets(n);
  for (int y = window.y_min(); y <= window.y_max(); ++y) {
    for (int x = window.x_min(); x <= window.x_max(); ++x) {
      const auto v = static_cast<std::uint32_t>(window.index({x, y}));
      if (x < window.x_max() && window.horizontal_open(x, y))
        sets.unite(v, v + 1);
      if (y < window.y_max() && window.vertical_open(x, y))
        sets.unite(v, v + w);
    }
  }

  ClusterLabels labels;
  labels.label.assign(n, -1);
  std::vector<std::int32_t> root_label(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const auto root = sets.find(static_cast<std::uint32_t>(v));
    if (root_label[root] < 0) {
      root_label[root] = labels.components++;
      labels.boundary_connected.push_back(0);
    }
    labels.label[v] = root_label[root];
    if (window.on_border(window.vertex(v)))
      labels.boundary_connected[static_cast<std::size_t>(root_label[root])] = 1;
  }
  return labels;
}

std::vector<std::int32_t> plane_distance_field(const PlaneWindow &window, PlaneVertex source,
                                               std::optional<PlaneVertex> stop_at) {
  require_parameter(window.contains(source), "source outside the window");
  require_parameter(!stop_at || window.contains(*stop_at), "target outside the window");
  const auto w = static_cast<std::size_t>(window.width());
  std::vector<std::int32_t> dist(window.vertex_count(), -1);
  std::vector<std::uint32_t> queue;
  queue.reserve(window.vertex_count());
  const auto s = window.index(source);
  const auto stop = stop_at ? window.index(*stop_at) : dist.size();
  dist[s] = 0;
  queue.push_back(static_cast<std::uint32_t>(s));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    if (u == stop)
      break;
    const auto [x, y] = window.vertex(u);
    const auto visit = [&](std::size_t v) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(static_cast<std::uint32_t>(v));
      }
    };
    if (x < window.x_max() && window.horizontal_open(x, y))
      visit(u + 1);
    if (x > window.x_min() && window.horizontal_open(x - 1, y))
      visit(u - 1);
    if (y < window.y_max() && window.vertical_open(x, y))
      visit(u + w);
    if (y > window.y_min() && window.vertical_open(x, y - 1))
      visit(u - w);
  }
  return dist;
}

std::optional<std::int64_t> plane_distance(const PlaneWindow &window, PlaneVertex source,
                                           PlaneVertex target) {
  require_parameter(window.contains(target), "target outside the window");
  const auto dist = plane_distance_field(window, source, target);
  const auto d = dist[window.index(target)];
  if (d < 0)
    return std::nullopt;
  return d;
}

std::optional<PlaneVertex> find_T(const PlaneWindow &window, const ClusterLabels &labels, int n, int k) {
  require_parameter(n >= 1 && k >= 1, "find_T needs spacing n >= 1 and index k >= 1");
  require_contract(labels.label.size() == window.vertex_count(), "labels do not match the window");
  if (!window.contains({0, 0}))
    return std::nullopt;
  int seen = 0;
  for (long long x = n; x <= window.x_max(); x += n) {
    const PlaneVertex v{static_cast<int>(x), 0};
    if (labels.reaches_border(window.index(v)) && ++seen == k)
      return v;
  }
  return std::nullopt;
}

MuEstimate estimate_mu(double eps, int n, int margin, std::uint64_t replicas, std::uint64_t seed) {
  require_probability(eps, "eps");
  require_parameter(n >= 1, "mu estimation needs n >= 1");
  require_parameter(margin >= 1, "mu estimation needs margin >= 1");
  require_parameter(replicas >= 1, "mu estimation needs at least one replica");

  struct Acc {
    RunningStats ratio;
    std::uint64_t admissible = 0;
  };
  const auto body = [&](std::uint64_t r, Acc &acc) {
    const auto window = sample_window(-margin, n + margin, -margin, margin, eps, seed, r);
    const auto labels = label_clusters(window);
    const auto origin = window.index({0, 0});
    const auto target = window.index({n, 0});
    if (!labels.connected(origin, target) || !labels.reaches_border(origin))
      return;
    const auto d = plane_distance(window, {0, 0}, {n, 0});
    require_contract(d.has_value(), "BFS disagrees with cluster labels");
    ++acc.admissible;
    acc.ratio.add(static_cast<double>(*d) / static_cast<double>(n));
  };
  const auto merge = [](Acc &into, const Acc &from) {
    into.ratio.merge(from.ratio);
    into.admissible += from.admissible;
  };
  const auto total = reduce_replicas<Acc>(replicas, body, merge);
  if (total.admissible == 0)
    throw EstimationError("no admissible replica: lower eps or enlarge the window margin");

  MuEstimate out;
  out.eps = eps;
  out.n = n;
  out.margin = margin;
  out.replicas = replicas;
  out.admissible = total.admissible;
  out.admissible_fraction = static_cast<double>(total.admissible) / static_cast<double>(replicas);
  out.mu_hat = total.ratio.mean;
  out.stderr_mu = total.ratio.standard_error();
  out.seed = seed;
  return out;
}

} // namespace crossperc
