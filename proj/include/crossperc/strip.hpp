#pragma once

// Percolation on the strip Z x [-K, K].
//
// Rows are addressed by their lattice coordinate j in [-K, K]; storage index
// is j + K. Edge flags are bytes, 1 = open, 0 = closed.
//
// Cross model: vertical edges (length 1) and both diagonals (length 2) are
// always open; horizontal edges (length 1) are random.
// Standard model: horizontal and vertical edges random, no diagonals.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "crossperc/random.hpp"

namespace crossperc {

enum class Model { Cross, Standard };

const char *to_string(Model model) noexcept;

class StripGeometry {
public:
  StripGeometry(int half_width, Model model);

  int half_width() const noexcept { return half_width_; }
  Model model() const noexcept { return model_; }
  int rows() const noexcept { return 2 * half_width_ + 1; }
  std::size_t index(int row) const noexcept { return static_cast<std::size_t>(row + half_width_); }
  bool contains_row(int row) const noexcept { return row >= -half_width_ && row <= half_width_; }

  friend bool operator==(const StripGeometry &, const StripGeometry &) = default;

private:
  int half_width_;
  Model model_;
};

using EdgeFlags = std::vector<std::uint8_t>;

/// Edges leaving column i to the right, plus (Standard model only) the
/// vertical edges of column i + 1.
struct EdgeColumn {
  EdgeFlags horizontal;               ///< (i,j)->(i+1,j), 2K+1 flags
  std::optional<EdgeFlags> vertical;  ///< (i+1,j)->(i+1,j+1), 2K flags

  static EdgeColumn uniform(const StripGeometry &geom, bool open);

  friend bool operator==(const EdgeColumn &, const EdgeColumn &) = default;
};

/// A materialised strip segment: vertices in columns 0..columns.size().
struct StripConfig {
  StripGeometry geometry;
  EdgeFlags first_vertical;  ///< verticals of column 0; Standard model only
  std::vector<EdgeColumn> columns;

  std::int64_t length() const noexcept { return static_cast<std::int64_t>(columns.size()); }

  bool horizontal_open(std::int64_t column, int row) const;
  /// Edge (column,row)->(column,row+1).
  bool vertical_open(std::int64_t column, int row) const;

  /// Throws ContractError if any flag vector has the wrong length.
  void validate() const;

  static StripConfig uniform(const StripGeometry &geom, std::int64_t n_columns, bool open);

  friend bool operator==(const StripConfig &, const StripConfig &) = default;
};

/// One draw per flag: the 2K+1 horizontals in row order, then (Standard)
/// the 2K verticals in row order. A flag is closed iff the draw fires a
/// BernoulliThreshold(eps).
EdgeColumn sample_column(SplitMix64 &rng, const StripGeometry &geom, double eps);

/// Stream index of the column-0 verticals.
inline constexpr std::uint64_t kFirstVerticalStream = ~std::uint64_t{0};

/// Column i is drawn from derive_stream(seed, i); the column-0 verticals of
/// the Standard model from derive_stream(seed, kFirstVerticalStream).
StripConfig sample_strip(const StripGeometry &geom, double eps, std::int64_t n_columns,
                         std::uint64_t seed);

struct DistanceProfile {
  std::int64_t column = 0;
  std::vector<std::int64_t> d;  ///< d[j + K] = D(column, j)

  int half_width() const noexcept { return static_cast<int>(d.size() / 2); }
  std::int64_t at(int row) const { return d.at(static_cast<std::size_t>(row + half_width())); }

  friend bool operator==(const DistanceProfile &, const DistanceProfile &) = default;
};

/// Column 0 seen from the origin: d[j] = |j|.
DistanceProfile initial_profile(int half_width);

/// Adjacent entries differ by exactly one and d[j] = column + j (mod 2).
bool profile_invariants_hold(const DistanceProfile &profile) noexcept;

/// Throws ContractError unless the +-1 vertical invariant holds.
void validate_profile(const DistanceProfile &profile);

/// D(i+1, .) from D(i, .) in the Cross model. Only the horizontal flags of
/// `col` are consulted.
DistanceProfile cross_step(const DistanceProfile &profile, const EdgeColumn &col);

namespace detail {
/// Allocation-free kernel behind cross_step. `next` may not alias `current`.
void cross_step_kernel(std::span<const std::int64_t> current, std::span<const std::uint8_t> open,
                       std::span<std::int64_t> next) noexcept;
}  // namespace detail

/// Cross-model profile at column n (0 <= n <= length) built from the
/// horizontal edges of `config`, whatever its model.
DistanceProfile cross_profile(const StripConfig &config, std::int64_t n);

struct Vertex {
  std::int64_t column = 0;
  int row = 0;

  friend bool operator==(const Vertex &, const Vertex &) = default;
};

/// Dijkstra from `source` over the explicit graph of `config`; entry
/// [column * (2K+1) + row + K] is the distance or nullopt if unreachable.
/// Left steps are allowed.
std::vector<std::optional<std::int64_t>> shortest_path_field(const StripConfig &config,
                                                             Vertex source);

std::optional<std::int64_t> shortest_path_oracle(const StripConfig &config, Vertex source,
                                                 Vertex target);

/// D^K(n, 0) in the Standard model, paths restricted to columns 0..n.
std::optional<std::int64_t> standard_distance(const StripConfig &config, std::int64_t n);

/// Column range [column_begin, column_end] x row range [row_begin, row_end]
/// of vertices; its unit squares are the cells with lower-left corner in
/// [column_begin, column_end) x [row_begin, row_end).
struct Box {
  std::int64_t column_begin = 0;
  std::int64_t column_end = 0;
  int row_begin = 0;
  int row_end = 0;
};

/// [0, n] x [-K, K].
Box event_box(const StripGeometry &geom, std::int64_t n);

/// True iff every unit square of `box` has at most one closed side.
bool check_event_A(const StripConfig &config, const Box &box);

// Text format, one line per record:
//
//   # comment
//   K <K> model <cross|standard>
//   init V:<bits>              (Standard only; verticals of column 0)
//   <i> H:<bits> V:<bits>      (V: is empty in the Cross model)
//
// Bits run from row -K upwards, '1' = open, '0' = closed.
void write_edges(std::ostream &out, const StripConfig &config);
StripConfig read_edges(std::istream &in);

}  // namespace crossperc
