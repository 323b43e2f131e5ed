#include "crossperc/strip.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "crossperc/errors.hpp"

namespace crossperc {

const char *to_string(Model model) noexcept {
  return model == Model::Cross ? "cross" : "standard";
}

StripGeometry::StripGeometry(int half_width, Model model) : half_width_(half_width), model_(model) {
  require_parameter(half_width >= 1, "strip half-width K must be >= 1, got " + std::to_string(half_width));
}

EdgeColumn EdgeColumn::uniform(const StripGeometry &geom, bool open) {
  EdgeColumn col;
  const auto flag = static_cast<std::uint8_t>(open ? 1 : 0);
  col.horizontal.assign(static_cast<std::size_t>(geom.rows()), flag);
  if (geom.model() == Model::Standard)
    col.vertical = EdgeFlags(static_cast<std::size_t>(2 * geom.half_width()), flag);
  return col;
}

bool StripConfig::horizontal_open(std::int64_t column, int row) const {
  return columns.at(static_cast<std::size_t>(column)).horizontal.at(geometry.index(row)) != 0;
}

bool StripConfig::vertical_open(std::int64_t column, int row) const {
  if (geometry.model() == Model::Cross)
    return true;
  const auto at = geometry.index(row);
  if (column == 0)
    return first_vertical.at(at) != 0;
  return columns.at(static_cast<std::size_t>(column - 1)).vertical.value().at(at) != 0;
}

void StripConfig::validate() const {
  const auto rows = static_cast<std::size_t>(geometry.rows());
  const auto verticals = rows - 1;
  const bool standard = geometry.model() == Model::Standard;
  require_contract(first_vertical.size() == (standard ? verticals : 0),
                   "column-0 vertical flags do not match the geometry");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto &col = columns[i];
    require_contract(col.horizontal.size() == rows,
                     "column " + std::to_string(i) + ": expected " + std::to_string(rows) +
                         " horizontal flags, got " + std::to_string(col.horizontal.size()));
    if (standard)
      require_contract(col.vertical && col.vertical->size() == verticals,
                       "column " + std::to_string(i) + ": vertical flags do not match the geometry");
    else
      require_contract(!col.vertical, "column " + std::to_string(i) +
                                          ": Cross-model columns carry no vertical flags");
  }
}

StripConfig StripConfig::uniform(const StripGeometry &geom, std::int64_t n_columns, bool open) {
  require_parameter(n_columns >= 0, "column count must be non-negative");
  StripConfig config{geom, {}, {}};
  if (geom.model() == Model::Standard)
    config.first_vertical.assign(static_cast<std::size_t>(2 * geom.half_width()), open ? 1 : 0);
  config.columns.assign(static_cast<std::size_t>(n_columns), EdgeColumn::uniform(geom, open));
  return config;
}

namespace {

EdgeFlags sample_flags(SplitMix64 &rng, std::size_t count, const BernoulliThreshold &closed) {
  EdgeFlags flags(count);
  for (auto &flag : flags)
    flag = closed.fires(rng()) ? 0 : 1;
  return flags;
}

} // namespace

EdgeColumn sample_column(SplitMix64 &rng, const StripGeometry &geom, double eps) {
  const BernoulliThreshold closed(eps);
  EdgeColumn col;
  col.horizontal = sample_flags(rng, static_cast<std::size_t>(geom.rows()), closed);
  if (geom.model() == Model::Standard)
    col.vertical = sample_flags(rng, static_cast<std::size_t>(geom.rows() - 1), closed);
  return col;
}

StripConfig sample_strip(const StripGeometry &geom, double eps, std::int64_t n_columns,
                         std::uint64_t seed) {
  require_probability(eps, "eps");
  require_parameter(n_columns >= 0, "column count must be non-negative");
  StripConfig config{geom, {}, {}};
  if (geom.model() == Model::Standard) {
    auto rng = derive_stream(seed, kFirstVerticalStream);
    config.first_vertical =
        sample_flags(rng, static_cast<std::size_t>(geom.rows() - 1), BernoulliThreshold(eps));
  }
  config.columns.reserve(static_cast<std::size_t>(n_columns));
  for (std::int64_t i = 0; i < n_columns; ++i) {
    auto rng = derive_stream(seed, static_cast<std::uint64_t>(i));
    config.columns.push_back(sample_column(rng, geom, eps));
  }
  return config;
}

DistanceProfile initial_profile(int half_width) {
  require_parameter(half_width >= 1, "strip half-width K must be >= 1");
  DistanceProfile profile;
  profile.d.resize(static_cast<std::size_t>(2 * half_width + 1));
  for (int j = -half_width; j <= half_width; ++j)
    profile.d[static_cast<std::size_t>(j + half_width)] = std::abs(j);
  return profile;
}

bool profile_invariants_hold(const DistanceProfile &profile) noexcept {
  const auto &d = profile.d;
  if (d.size() < 3 || d.size() % 2 == 0)
    return false;
  const int K = profile.half_width();
  for (std::size_t r = 0; r < d.size(); ++r) {
    if (r + 1 < d.size() && std::abs(d[r] - d[r + 1]) != 1)
      return false;
    const std::int64_t row = static_cast<std::int64_t>(r) - K;
    if (((d[r] - profile.column - row) % 2 + 2) % 2 != 0)
      return false;
  }
  return true;
}

void validate_profile(const DistanceProfile &profile) {
  const auto &d = profile.d;
  require_contract(d.size() >= 3 && d.size() % 2 == 1,
                   "distance profile must hold 2K+1 >= 3 entries, got " + std::to_string(d.size()));
  for (std::size_t r = 0; r + 1 < d.size(); ++r)
    require_contract(std::abs(d[r] - d[r + 1]) == 1,
                     "distance profile violates the +-1 vertical invariant at row " +
                         std::to_string(static_cast<std::int64_t>(r) - profile.half_width()));
}

namespace detail {

void cross_step_kernel(std::span<const std::int64_t> current, std::span<const std::uint8_t> open,
                       std::span<std::int64_t> next) noexcept {
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t rows = current.size();
  for (std::size_t r = 0; r < rows; ++r) {
    std::int64_t best = open[r] ? current[r] + 1 : kInf;
    if (r > 0)
      best = std::min(best, current[r - 1] + 2);
    if (r + 1 < rows)
      best = std::min(best, current[r + 1] + 2);
    next[r] = best;
  }
  // Unit vertical weights: one sweep each way reaches the fixed point.
  for (std::size_t r = 1; r < rows; ++r)
    next[r] = std::min(next[r], next[r - 1] + 1);
  for (std::size_t r = rows - 1; r-- > 0;)
    next[r] = std::min(next[r], next[r + 1] + 1);
}

} // namespace detail

DistanceProfile cross_step(const DistanceProfile &profile, const EdgeColumn &col) {
  validate_profile(profile);
  require_contract(col.horizontal.size() == profile.d.size(),
                   "edge column does not match the profile's half-width");
  require_contract(!col.vertical, "cross_step expects a Cross-model column");
  DistanceProfile next;
  next.column = profile.column + 1;
  next.d.resize(profile.d.size());
  detail::cross_step_kernel(profile.d, col.horizontal, next.d);
  return next;
}

DistanceProfile cross_profile(const StripConfig &config, std::int64_t n) {
  require_parameter(n >= 0 && n <= config.length(),
                    "column " + std::to_string(n) + " is outside the materialised strip");
  auto current = initial_profile(config.geometry.half_width());
  std::vector<std::int64_t> scratch(current.d.size());
  for (std::int64_t i = 0; i < n; ++i) {
    detail::cross_step_kernel(current.d, config.columns[static_cast<std::size_t>(i)].horizontal,
                              scratch);
    std::swap(current.d, scratch);
  }
  current.column = n;
  return current;
}

namespace {

std::vector<std::optional<std::int64_t>> dijkstra(const StripConfig &config, Vertex source,
                                                  std::int64_t last_column) {
  const auto &geom = config.geometry;
  const int K = geom.half_width();
  const std::int64_t rows = geom.rows();
  const bool cross = geom.model() == Model::Cross;
  const auto id = [&](std::int64_t c, int r) { return static_cast<std::size_t>(c * rows + r + K); };

  constexpr auto kUnset = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(static_cast<std::size_t>((last_column + 1) * rows), kUnset);
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

  dist[id(source.column, source.row)] = 0;
  queue.emplace(0, id(source.column, source.row));
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (du != dist[u])
      continue;
    const auto c = static_cast<std::int64_t>(u) / rows;
    const int r = static_cast<int>(static_cast<std::int64_t>(u) % rows) - K;
    const auto relax = [&](std::int64_t c2, int r2, std::int64_t w) {
      const auto v = id(c2, r2);
      if (du + w < dist[v]) {
        dist[v] = du + w;
        queue.emplace(dist[v], v);
      }
    };
    if (c < last_column && config.horizontal_open(c, r))
      relax(c + 1, r, 1);
    if (c > 0 && config.horizontal_open(c - 1, r))
      relax(c - 1, r, 1);
    if (r < K && config.vertical_open(c, r))
      relax(c, r + 1, 1);
    if (r > -K && config.vertical_open(c, r - 1))
      relax(c, r - 1, 1);
    if (cross) {
      for (const std::int64_t dc : {-1, 1}) {
        if (c + dc < 0 || c + dc > last_column)
          continue;
        if (r < K)
          relax(c + dc, r + 1, 2);
        if (r > -K)
          relax(c + dc, r - 1, 2);
      }
    }
  }

  std::vector<std::optional<std::int64_t>> out(dist.size());
  for (std::size_t v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnset)
      out[v] = dist[v];
  return out;
}

void require_vertex(const StripConfig &config, Vertex v, std::int64_t last_column) {
  require_parameter(v.column >= 0 && v.column <= last_column && config.geometry.contains_row(v.row),
                    "vertex (" + std::to_string(v.column) + "," + std::to_string(v.row) +
                        ") lies outside the materialised strip");
}

} // namespace

std::vector<std::optional<std::int64_t>> shortest_path_field(const StripConfig &config,
                                                             Vertex source) {
  config.validate();
  require_vertex(config, source, config.length());
  return dijkstra(config, source, config.length());
}

std::optional<std::int64_t> shortest_path_oracle(const StripConfig &config, Vertex source,
                                                 Vertex target) {
  config.validate();
  require_vertex(config, source, config.length());
  require_vertex(config, target, config.length());
  const auto field = dijkstra(config, source, config.length());
  return field[static_cast<std::size_t>(target.column * config.geometry.rows() + target.row +
                                        config.geometry.half_width())];
}

std::optional<std::int64_t> standard_distance(const StripConfig &config, std::int64_t n) {
  require_parameter(config.geometry.model() == Model::Standard,
                    "standard_distance needs a Standard-model strip");
  config.validate();
  require_parameter(n >= 0 && n <= config.length(),
                    "column " + std::to_string(n) + " is outside the materialised strip");
  const auto field = dijkstra(config, Vertex{0, 0}, n);
  return field[static_cast<std::size_t>(n * config.geometry.rows() + config.geometry.half_width())];
}

Box event_box(const StripGeometry &geom, std::int64_t n) {
  return Box{0, n, -geom.half_width(), geom.half_width()};
}

bool check_event_A(const StripConfig &config, const Box &box) {
  config.validate();
  const auto &geom = config.geometry;
  require_parameter(box.column_begin >= 0 && box.column_begin <= box.column_end &&
                        box.column_end <= config.length() && geom.contains_row(box.row_begin) &&
                        geom.contains_row(box.row_end) && box.row_begin <= box.row_end,
                    "event box lies outside the materialised strip");
  for (std::int64_t c = box.column_begin; c < box.column_end; ++c) {
    for (int r = box.row_begin; r < box.row_end; ++r) {
      const int closed = !config.horizontal_open(c, r) + !config.horizontal_open(c, r + 1) +
                         !config.vertical_open(c, r) + !config.vertical_open(c + 1, r);
      if (closed > 1)
        return false;
    }
  }
  return true;
}

} // namespace crossperc
