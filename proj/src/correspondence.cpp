#include "crossperc/correspondence.hpp"

#include "crossperc/errors.hpp"

namespace crossperc {

TasepState extract_particles(const DistanceProfile &profile) {
  validate_profile(profile);
  const int K = profile.half_width();
  TasepState state(K);
  for (int j = -K + 1; j <= K; ++j)
    state.set(j, profile.at(j) == profile.at(j - 1) - 1);
  return state;
}

DistanceProfile reconstruct_profile(const TasepState &state, std::int64_t bottom,
                                    std::int64_t column) {
  const int K = state.half_width();
  DistanceProfile profile;
  profile.column = column;
  profile.d.resize(static_cast<std::size_t>(2 * K + 1));
  profile.d[0] = bottom;
  for (int j = -K + 1; j <= K; ++j) {
    const auto r = static_cast<std::size_t>(j + K);
    profile.d[r] = profile.d[r - 1] + (state.occupied(j) ? -1 : 1);
  }
  return profile;
}

std::optional<std::vector<std::uint8_t>> fired_events(const TasepState &y_now,
                                                      const TasepState &y_next) {
  require_contract(y_now.half_width() == y_next.half_width(), "states disagree on K");
  const int K = y_now.half_width();
  std::vector<std::uint8_t> fired(static_cast<std::size_t>(2 * K + 1), 0);
  // Enabled events touch disjoint sites, so each one's outcome is visible
  // on the site it fills or empties.
  for (int row = -K; row <= K; ++row) {
    if (!event_enabled(y_now, row))
      continue;
    bool happened = false;
    if (row == -K)
      happened = y_next.occupied(-K + 1);
    else if (row == K)
      happened = !y_next.occupied(K);
    else
      happened = y_next.occupied(row + 1);
    fired[static_cast<std::size_t>(row + K)] = happened ? 1 : 0;
  }
  if (apply_events(y_now, fired) != y_next)
    return std::nullopt;
  return fired;
}

int reconstruct_increment(const TasepState &y_now, const TasepState &y_next, int row) {
  const int K = y_now.half_width();
  require_parameter(row >= -K && row <= K, "row outside [-K, K]");
  const auto fired = fired_events(y_now, y_next);
  require_contract(fired.has_value(), "y_next is not reachable from y_now in one TASEP step");
  // fired[row] is set only for enabled slots: a jump away from `row` in the
  // bulk, an entry at the bottom, an exit at the top.
  return (*fired)[static_cast<std::size_t>(row + K)] ? 3 : 1;
}

CouplingReport merge(CouplingReport into, const CouplingReport &other) {
  into.steps_checked += other.steps_checked;
  into.mismatches += other.mismatches;
  if (!into.first_mismatch)
    into.first_mismatch = other.first_mismatch;
  return into;
}

CouplingReport verify_coupling(const StripConfig &config) {
  require_parameter(config.geometry.model() == Model::Cross, "coupling is defined on the Cross model");
  config.validate();
  const int K = config.geometry.half_width();

  CouplingReport report;
  report.half_width = K;
  const auto record = [&](CouplingMismatch m) {
    ++report.mismatches;
    if (!report.first_mismatch)
      report.first_mismatch = std::move(m);
  };

  auto profile = initial_profile(K);
  auto state = extract_particles(profile);
  auto rebuilt = profile;
  for (std::int64_t i = 0; i < config.length(); ++i) {
    const auto &col = config.columns[static_cast<std::size_t>(i)];
    auto next_profile = cross_step(profile, col);
    auto next_state = coupled_tasep_step(state, col);

    const auto extracted = extract_particles(next_profile);
    for (int j = -K + 1; j <= K; ++j)
      if (extracted.occupied(j) != next_state.occupied(j))
        record({i + 1, j, "state", extracted.occupied(j), next_state.occupied(j)});

    const auto fired = fired_events(state, next_state);
    for (int j = -K; j <= K; ++j) {
      const auto r = static_cast<std::size_t>(j + K);
      rebuilt.d[r] += fired && (*fired)[r] ? 3 : 1;
      if (rebuilt.d[r] != next_profile.d[r])
        record({i + 1, j, "distance", next_profile.d[r], rebuilt.d[r]});
    }
    rebuilt.column = i + 1;
    ++report.steps_checked;
    profile = std::move(next_profile);
    state = std::move(next_state);
  }
  return report;
}

CouplingReport verify_coupling(int half_width, double eps, std::int64_t n_columns, std::uint64_t seed) {
  require_probability(eps, "eps");
  require_parameter(n_columns >= 0, "column count must be non-negative");
  auto report = verify_coupling(sample_strip(StripGeometry(half_width, Model::Cross), eps, n_columns, seed));
  report.eps = eps;
  report.seed = seed;
  return report;
}

} // namespace crossperc
