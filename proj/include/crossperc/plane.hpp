#pragma once

// Bond percolation on finite windows of Z^2.

#include <cstdint>
#include <optional>
#include <vector>

namespace crossperc {

struct PlaneVertex {
  int x = 0;
  int y = 0;

  friend bool operator==(const PlaneVertex &, const PlaneVertex &) = default;
};

/// Vertices [x_min, x_max] x [y_min, y_max]; edge flags 1 = open.
class PlaneWindow {
public:
  PlaneWindow(int x_min, int x_max, int y_min, int y_max, double eps);

  /// Every edge open (or closed).
  static PlaneWindow uniform(int x_min, int x_max, int y_min, int y_max, bool open);

  int x_min() const noexcept { return x_min_; }
  int x_max() const noexcept { return x_max_; }
  int y_min() const noexcept { return y_min_; }
  int y_max() const noexcept { return y_max_; }
  int width() const noexcept { return x_max_ - x_min_ + 1; }
  int height() const noexcept { return y_max_ - y_min_ + 1; }
  double eps() const noexcept { return eps_; }
  std::size_t vertex_count() const noexcept {
    return static_cast<std::size_t>(width()) * static_cast<std::size_t>(height());
  }

  bool contains(PlaneVertex v) const noexcept {
    return v.x >= x_min_ && v.x <= x_max_ && v.y >= y_min_ && v.y <= y_max_;
  }
  bool on_border(PlaneVertex v) const noexcept {
    return v.x == x_min_ || v.x == x_max_ || v.y == y_min_ || v.y == y_max_;
  }
  std::size_t index(PlaneVertex v) const noexcept {
    return static_cast<std::size_t>(v.y - y_min_) * static_cast<std::size_t>(width()) +
           static_cast<std::size_t>(v.x - x_min_);
  }
  PlaneVertex vertex(std::size_t index) const noexcept;

  /// (x,y)->(x+1,y); requires x < x_max.
  bool horizontal_open(int x, int y) const noexcept { return horizontal_[index({x, y})] != 0; }
  /// (x,y)->(x,y+1); requires y < y_max.
  bool vertical_open(int x, int y) const noexcept { return vertical_[index({x, y})] != 0; }
  void set_horizontal(int x, int y, bool open) noexcept { horizontal_[index({x, y})] = open ? 1 : 0; }
  void set_vertical(int x, int y, bool open) noexcept { vertical_[index({x, y})] = open ? 1 : 0; }

private:
  int x_min_, x_max_, y_min_, y_max_;
  double eps_;
  // Indexed like vertices; the slot of the last column (row) is unused.
  std::vector<std::uint8_t> horizontal_;
  std::vector<std::uint8_t> vertical_;
};

/// Flag of the edge leaving (x,y) rightwards (vertical = false) or upwards
/// depends only on (seed, replica, x, y, orientation):
///   key  = derive_seed(seed, replica)
///   word = mix64(mix64(key ^ (uint32(x) << 32 | uint32(y))) + orientation)
/// with orientation 0 for horizontal and 1 for vertical edges;
/// closed iff BernoulliThreshold(eps) fires on `word`. Nested windows with
/// the same (seed, replica) therefore agree on their common edges.
PlaneWindow sample_window(int x_min, int x_max, int y_min, int y_max, double eps, std::uint64_t seed,
                          std::uint64_t replica);

struct ClusterLabels {
  std::vector<std::int32_t> label;  ///< per vertex, 0..components-1 in first-seen order
  std::vector<std::uint8_t> boundary_connected;  ///< per component
  std::int32_t components = 0;

  bool connected(std::size_t a, std::size_t b) const { return label[a] == label[b]; }
  bool reaches_border(std::size_t v) const {
    return boundary_connected[static_cast<std::size_t>(label[v])] != 0;
  }
};

/// Union-find over open edges. A component is boundary-connected when it
/// contains a vertex on the window border.
ClusterLabels label_clusters(const PlaneWindow &window);

/// BFS hop distances from `source` over open edges; -1 where unreachable.
/// Stops early once `stop_at` (if given) is settled.
std::vector<std::int32_t> plane_distance_field(const PlaneWindow &window, PlaneVertex source,
                                               std::optional<PlaneVertex> stop_at = std::nullopt);

std::optional<std::int64_t> plane_distance(const PlaneWindow &window, PlaneVertex source,
                                           PlaneVertex target);

/// k-th point (k >= 1) of (n,0), (2n,0), ... inside the window whose
/// component is boundary-connected.
std::optional<PlaneVertex> find_T(const PlaneWindow &window, const ClusterLabels &labels, int n, int k);

struct MuEstimate {
  double eps = 0.0;
  int n = 0;
  int margin = 0;
  std::uint64_t replicas = 0;
  std::uint64_t admissible = 0;
  double admissible_fraction = 0.0;
  double mu_hat = 0.0;
  double stderr_mu = 0.0;
  std::uint64_t seed = 0;
};

/// Mean of D(0 -> (n,0)) / n over windows [-margin, n+margin] x
/// [-margin, margin] in which 0 and (n,0) are connected and
/// boundary-connected. Replica r is sample_window(..., seed, r).
/// EstimationError when no replica is admissible.
MuEstimate estimate_mu(double eps, int n, int margin, std::uint64_t replicas, std::uint64_t seed);

} // namespace crossperc
